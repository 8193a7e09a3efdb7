"""
cociter: multiple-perspective co-citation network analysis.

Turns field-tagged bibliographic exports into clustered, labeled,
summarized, and metric-annotated co-citation networks (author- or
document-level) and serves the result to an interactive explorer.
"""

from .clustering import ClusterOptions, Partition, cut, normalized_cut, spectral_partition
from .compare import FactorSolution, match_member, overlap_rate, project_cluster
from .harness import generate_corpus, size_experiment
from .ingest import (
    CitedReference,
    Record,
    RecordSet,
    normalize_author,
    parse_cited_reference,
    parse_wos_file,
    read_records_jsonl,
)
from .labeling import (
    CorpusIndex,
    consensus_scores,
    extract_noun_phrases,
    label_cluster,
    rank_llr,
    rank_mi,
    rank_tfidf,
)
from .metrics import betweenness, compute_metrics, modularity, silhouette
from .network import (
    CoCitationNetwork,
    TimeSlice,
    build_network,
    merge_networks,
    select_top_cited,
    slice_records,
)
from .pipeline import AnalysisConfig, export_graphml, read_bundle, run_pipeline, write_bundle
from .summarize import energy_rank, gtf_idf_rank, gtf_rank, segment_sentences, summarize_cluster
from .temporal import BurstOptions, detect_bursts, sigma, time_span

__version__ = "0.1.0"
