from cociter.harness import generate_corpus, render_size_report, size_experiment


def test_corpus_generation_is_deterministic():
    a = generate_corpus(n_records=50, n_communities=3, refs_per_community=8, seed=9)
    b = generate_corpus(n_records=50, n_communities=3, refs_per_community=8, seed=9)
    assert [r.to_json() for r in a] == [r.to_json() for r in b]


def test_corpus_shape():
    rs = generate_corpus(n_records=60, n_communities=5, refs_per_community=10, seed=1)
    assert len(rs) == 60
    years = {r.year for r in rs}
    assert min(years) >= 1996 and max(years) <= 2008
    assert all(r.cited_refs for r in rs)
    assert all(r.title and r.abstract and r.index_terms for r in rs)


def test_size_experiment_report_format():
    rs = generate_corpus(n_records=150, n_communities=4, refs_per_community=12, seed=3)
    rows = size_experiment(rs, [10, 20, 30], 1996, 2008)
    text = render_size_report(rows)
    lines = text.strip().splitlines()
    assert lines[0] == "top_n\tnodes\tlinks\tclusters\tmodularity_q\tmean_silhouette"
    assert len(lines) == 4
    for row, line in zip(rows, lines[1:]):
        fields = line.split("\t")
        assert int(fields[0]) == row.top_n
        assert int(fields[1]) == row.n_nodes
        assert int(fields[3]) == row.k


def test_cluster_count_tracks_selection_size():
    rs = generate_corpus(n_records=200, n_communities=4, refs_per_community=12, seed=3)
    rows = size_experiment(rs, [12, 24, 48], 1996, 2008)
    ks = [row.k for row in rows]
    assert all(a <= b for a, b in zip(ks, ks[1:]))
    assert all(row.n_nodes <= row.top_n for row in rows)
