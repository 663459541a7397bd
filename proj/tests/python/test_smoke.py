"""End-to-end smoke tests for the python bindings and the CLI binary."""

import os
import subprocess
import textwrap

import pytest

import biblionet as bn

CSV_TEXT = textwrap.dedent(
    """\
    Authors,Author(s) ID,Title,Year,Source title,Cited by,EID,Affiliations,Authors with affiliations,Author Keywords,Index Keywords,References,Document Type
    "Khan A.; Smith J.",1;2,Poverty dynamics,2014,Journal of Development,12,e1,"ITU, Lahore, Pakistan; Harvard, Boston, United States","Khan A., ITU, Lahore, Pakistan","Poverty; Economic Growth",Econ,"Old ref one; Old ref two",Article
    Ali B.,3,Education reform,2015,Journal of Development,3,e2,"QAU, Islamabad, Pakistan","Ali B., QAU, Islamabad, Pakistan","Education; Poverty",,Poverty dynamics,Article
    "Kumar C.; Khan A.",4;1,Gender and work,2016,South Asian Review,7,e3,"DU, Delhi, India; ITU, Lahore, Pakistan","Kumar C., DU, Delhi, India","Gender; Poverty",,"Poverty dynamics; Education reform",Article
    """
)


def make_corpus():
    records = bn.parse_scopus_csv(CSV_TEXT)
    return bn.merge_corpora([records], "Pakistan", ["inline.csv"])


def test_parse_and_merge():
    corpus = make_corpus()
    assert len(corpus) == 3
    rec = corpus.record("e1")
    assert rec.authors == ["Khan A.", "Smith J."]
    assert rec.year == 2014
    assert rec.author_keywords == ["Poverty", "Economic Growth"]


def test_corpus_round_trip():
    corpus = make_corpus()
    text = bn.write_corpus(corpus)
    again = bn.read_corpus(text)
    assert again.record_ids() == corpus.record_ids()
    assert bn.write_corpus(again) == text


def test_country_extraction_and_keywords():
    corpus = make_corpus()
    aliases = bn.CountryAliasTable.defaults()
    assert bn.extract_countries(corpus.record("e1"), aliases) == ["Pakistan", "USA"]
    assert bn.normalize_keywords(corpus.record("e1")) == ["poverty", "economic growth"]
    assert len(bn.reference_keys(corpus.record("e1"))) == 2


def test_build_metrics_cluster_pipeline():
    corpus = make_corpus()
    spec = bn.BuildSpec("coauthorship-country")
    net = bn.build_network(corpus, spec)
    assert net.node_count() == 3  # India, Pakistan, USA
    assert net.total_weight() == 2.0

    report = bn.MetricReport.compute(net)
    assert report.node_count == 3
    assert "degree_centrality" in report.to_csv().splitlines()[0]

    normalized = bn.normalize_association(net)
    assert bn.is_normalized(normalized)
    clustering = bn.cluster_network(normalized, resolution=1.0, seed=42, restarts=8)
    assert len(clustering.assignment) == 3
    assert clustering.quality == bn.cluster_objective(
        normalized, clustering.assignment, 1.0
    )
    # determinism
    again = bn.cluster_network(normalized, resolution=1.0, seed=42, restarts=8)
    assert again.assignment == clustering.assignment


def test_worked_micro_examples():
    net = bn.Network()
    for label in "abc":
        net.ensure_node(label)
    net.add_edge(0, 1, 1.0)
    net.add_edge(1, 2, 1.0)
    net.add_edge(0, 2, 1.0)
    assert bn.link_strength(net, 0, 1) == pytest.approx(1.5, abs=1e-12)
    assert bn.degree_centrality(net, 0) == 1.0
    assert bn.closeness_centrality(net, 0) == pytest.approx(1.0, abs=1e-12)
    assert bn.expected_cooccurrence(11, 0.1) == pytest.approx(1.0, abs=1e-12)


def test_network_round_trip_formats():
    corpus = make_corpus()
    net = bn.build_network(corpus, bn.BuildSpec("coauthorship-country"))
    for fmt in ("edge-tsv", "pajek", "gml"):
        text = bn.write_network(net, fmt)
        assert bn.read_network(text, fmt) == net


def test_quartiles():
    table = bn.QuartileTable.load_csv(
        "source_title,quartile\nJournal of Development,Q2\nSouth Asian Review,Q4\n"
    )
    report = bn.quartile_distribution(make_corpus(), table)
    assert report.counts == [0, 2, 0, 1]
    assert report.unmatched == 0
    assert report.percents[1] == pytest.approx(66.67)


def test_errors_surface_as_biblionet_error():
    with pytest.raises(bn.BiblionetError):
        bn.merge_corpora([[]], "empty")
    net = bn.Network()
    net.ensure_node("x")
    with pytest.raises(bn.BiblionetError):
        net.add_edge(0, 0, 1.0)


# --- CLI ---

CLI = os.environ.get("BIBLIONET_CLI")
needs_cli = pytest.mark.skipif(
    not (CLI and os.access(CLI, os.X_OK)), reason="BIBLIONET_CLI not available"
)


def run_cli(*args, cwd=None):
    return subprocess.run(
        [CLI, *args], capture_output=True, text=True, cwd=cwd, timeout=120
    )


@needs_cli
def test_cli_pipeline(tmp_path):
    csv_path = tmp_path / "pk.csv"
    csv_path.write_text(CSV_TEXT, encoding="utf-8")

    ingest = run_cli(
        "ingest", "--in", str(csv_path), "--tag", "Pakistan",
        "--out", str(tmp_path / "pk.corpus"),
    )
    assert ingest.returncode == 0, ingest.stderr
    assert (tmp_path / "pk.corpus").exists()
    assert (tmp_path / "pk.corpus.manifest.json").exists()

    network = run_cli(
        "network", "--corpus", str(tmp_path / "pk.corpus"),
        "--kind", "coauthorship-country", "--out", str(tmp_path / "pk.tsv"),
    )
    assert network.returncode == 0, network.stderr
    first = (tmp_path / "pk.tsv").read_text(encoding="utf-8")
    assert first.startswith("source\ttarget\tweight\n")

    # reruns are byte-identical (manifest reproducibility contract)
    network_again = run_cli(
        "network", "--corpus", str(tmp_path / "pk.corpus"),
        "--kind", "coauthorship-country", "--out", str(tmp_path / "pk.tsv"),
    )
    assert network_again.returncode == 0
    assert (tmp_path / "pk.tsv").read_text(encoding="utf-8") == first

    report = run_cli("report", "--net", str(tmp_path / "pk.tsv"), "--focus", "Pakistan", "--top", "10")
    assert report.returncode == 0, report.stderr
    assert report.stdout.splitlines()[0].startswith("Label")
    assert "USA" in report.stdout

    cluster = run_cli(
        "cluster", "--net", str(tmp_path / "pk.tsv"), "--normalize",
        "--resolution", "1.0", "--seed", "42", "--out", str(tmp_path / "clusters.csv"),
    )
    assert cluster.returncode == 0, cluster.stderr
    first_clusters = (tmp_path / "clusters.csv").read_text(encoding="utf-8")
    cluster_again = run_cli(
        "cluster", "--net", str(tmp_path / "pk.tsv"), "--normalize",
        "--resolution", "1.0", "--seed", "42", "--out", str(tmp_path / "clusters.csv"),
    )
    assert cluster_again.returncode == 0
    assert (tmp_path / "clusters.csv").read_text(encoding="utf-8") == first_clusters

    (tmp_path / "sjr.csv").write_text(
        "source_title,quartile\nJournal of Development,Q2\nSouth Asian Review,Q4\n",
        encoding="utf-8",
    )
    quartiles = run_cli(
        "quartiles", "--corpus", str(tmp_path / "pk.corpus"),
        "--table", str(tmp_path / "sjr.csv"), "--out", str(tmp_path / "quartiles.csv"),
    )
    assert quartiles.returncode == 0, quartiles.stderr
    assert "Q2,2,66.67" in (tmp_path / "quartiles.csv").read_text(encoding="utf-8")

    metrics = run_cli(
        "metrics", "--net", str(tmp_path / "pk.tsv"), "--out", str(tmp_path / "metrics.csv")
    )
    assert metrics.returncode == 0, metrics.stderr
    assert (tmp_path / "metrics.csv").read_text(encoding="utf-8").startswith(
        "label,links,total_link_strength"
    )


@needs_cli
def test_cli_exit_codes(tmp_path):
    usage = run_cli("network", "--corpus", "x.corpus")  # missing required --kind
    assert usage.returncode == 1

    unknown_kind = run_cli(
        "network", "--corpus", "x.corpus", "--kind", "bogus", "--out", "y.tsv"
    )
    assert unknown_kind.returncode == 1

    missing_file = run_cli(
        "network", "--corpus", str(tmp_path / "absent.corpus"),
        "--kind", "coauthorship-country", "--out", str(tmp_path / "y.tsv"),
    )
    assert missing_file.returncode == 2

    bad_csv = tmp_path / "bad.csv"
    bad_csv.write_text("NotAHeader\nx\n", encoding="utf-8")
    data_error = run_cli(
        "ingest", "--in", str(bad_csv), "--tag", "t", "--out", str(tmp_path / "o.corpus")
    )
    assert data_error.returncode == 2  # MissingColumn


@needs_cli
def test_cli_config_file(tmp_path):
    csv_path = tmp_path / "pk.csv"
    csv_path.write_text(CSV_TEXT, encoding="utf-8")
    corpus_path = tmp_path / "pk.corpus"
    ingest = run_cli("ingest", "--in", str(csv_path), "--tag", "Pakistan", "--out", str(corpus_path))
    assert ingest.returncode == 0

    config = tmp_path / "net.conf"
    config.write_text(
        f'corpus="{corpus_path}"\nkind="coauthorship-country"\nout="{tmp_path / "cfg.tsv"}"\n',
        encoding="utf-8",
    )
    with_config = run_cli("network", "--config", str(config))
    assert with_config.returncode == 0, with_config.stderr
    assert (tmp_path / "cfg.tsv").exists()

    # flags override config
    override = run_cli(
        "network", "--config", str(config), "--out", str(tmp_path / "override.tsv")
    )
    assert override.returncode == 0, override.stderr
    assert (tmp_path / "override.tsv").exists()
