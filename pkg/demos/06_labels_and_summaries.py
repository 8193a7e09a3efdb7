"""Automatic cluster labeling (nine ranked lists + consensus) and
extractive summaries from the citers of each cluster.
"""
from cociter import build_network, generate_corpus, select_top_cited, slice_records, spectral_partition, summarize_cluster
from cociter.labeling import CorpusIndex, label_cluster
from cociter.network import cited_keys

rs = generate_corpus(n_records=240, n_communities=3, refs_per_community=12, seed=12)
(sl,) = slice_records(rs, 1996, 2008, 13)
net = build_network(sl, select_top_cited(sl, 30, "cited_reference"), "cosine", "cited_reference")
partition = spectral_partition(net)
corpus = CorpusIndex(list(sl.records))

for cid in range(partition.k):
    members = partition.clusters[cid]
    citers = [r for r in sl.records if cited_keys(r, "cited_reference") & members]
    labels = label_cluster(cid, sorted(r.uid for r in citers), corpus)
    print(f"cluster {cid} ({len(members)} members, {len(citers)} citers)")
    print(f"  display label:   {labels.display_label!r} (top title term by LLR)")
    print(f"  tf*idf alternate: {labels.alt_label!r}")
    top_index = [t.term for t in labels.lists[('index', 'llr')][:3]]
    print(f"  index terms by LLR: {top_index}")
    print(f"  best methods by consensus: {list(labels.consensus.best_methods)}")

    summary = summarize_cluster(cid, citers, k=2, ranker="energy")
    for scored in summary.sentences:
        print(f"  [E={scored.score:.0f}] {scored.sentence.record_uid}: {scored.sentence.text}")
    print()
