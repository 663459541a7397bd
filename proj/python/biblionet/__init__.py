"""Bibliometric network toolkit: Scopus-style CSV exports to co-authorship,
citation, coupling, co-citation and keyword networks, with metrics,
clustering and quartile reports. The heavy lifting lives in the C++ core."""

from ._biblionet import (
    BiblionetError,
    BuildSpec,
    Clustering,
    Corpus,
    CountryAliasTable,
    MetricReport,
    Network,
    NodeStrength,
    PublicationRecord,
    QuartileReport,
    QuartileTable,
    build_network,
    cluster_network,
    cluster_objective,
    clustering_clu,
    clustering_csv,
    clustering_gml,
    closeness_centrality,
    degree_centrality,
    expected_cooccurrence,
    extract_countries,
    is_normalized,
    link_strength,
    merge_corpora,
    normalize_association,
    normalize_keywords,
    parse_scopus_csv,
    quartile_distribution,
    read_corpus,
    read_network,
    reference_keys,
    source_summary,
    top_link_strength,
    write_corpus,
    write_network,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

_FORMAT_BY_SUFFIX = {".net": "pajek", ".paj": "pajek", ".gml": "gml"}


def _format_for(path, format):
    if format is not None:
        return format
    from pathlib import Path

    return _FORMAT_BY_SUFFIX.get(Path(path).suffix, "edge-tsv")


def load_corpus(path):
    with open(path, "r", encoding="utf-8") as handle:
        return read_corpus(handle.read())


def save_corpus(corpus, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(write_corpus(corpus))


def load_network(path, format=None):
    with open(path, "r", encoding="utf-8") as handle:
        return read_network(handle.read(), _format_for(path, format))


def save_network(network, path, format=None):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(write_network(network, _format_for(path, format)))
