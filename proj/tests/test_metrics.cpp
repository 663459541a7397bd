#include <doctest.h>

#include <sstream>

#include "biblionet/errors.hpp"
#include "biblionet/metrics.hpp"
#include "helpers.hpp"

using namespace biblionet;

namespace {

Network unit_triangle() {
    Network net;
    for (int v = 0; v < 3; ++v) net.ensure_node("t" + std::to_string(v));
    net.add_edge(0, 1, 1.0);
    net.add_edge(1, 2, 1.0);
    net.add_edge(0, 2, 1.0);
    return net;
}

Network path3() {  // A - B - C, unit weights
    Network net;
    net.ensure_node("A");
    net.ensure_node("B");
    net.ensure_node("C");
    net.add_edge(0, 1, 1.0);
    net.add_edge(1, 2, 1.0);
    return net;
}

Network complete(int n) {
    Network net;
    for (int v = 0; v < n; ++v) net.ensure_node("k" + std::to_string(v));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) net.add_edge(i, j, 1.0);
    return net;
}

}  // namespace

TEST_CASE("link strength on the unit triangle is 1.5") {
    // m = 3, c_i = 2 each, c_ij = 1 -> 2*3*1 / (2*2)
    Network net = unit_triangle();
    CHECK(link_strength(net, 0, 1) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("link strength on the path A-B-C") {
    // S(A,B) = 2*2*1 / (1*2) = 2
    Network net = path3();
    CHECK(link_strength(net, 0, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(link_strength(net, 1, 2) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("link strength of a non-adjacent pair is 0") {
    Network net = path3();
    CHECK(link_strength(net, 0, 2) == 0.0);
    CHECK_THROWS_AS(link_strength(net, 0, 7), UnknownNode);
}

TEST_CASE("link strength matches the brute-force oracle on random graphs") {
    testutil::Rng rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        Network net = testutil::random_network(rng, 2 + static_cast<int>(rng.below(11)), 0.5);
        for (int i = 0; i < net.node_count(); ++i) {
            for (int j = i + 1; j < net.node_count(); ++j) {
                if (net.weight(i, j) == 0.0) continue;
                CHECK(link_strength(net, i, j) ==
                      doctest::Approx(testutil::association_oracle(net, i, j)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("link strength is scale invariant") {
    testutil::Rng rng(22);
    Network net = testutil::random_network(rng, 9, 0.5);
    for (double lambda : {0.5, 3.0, 10.0}) {
        Network scaled;
        for (int v = 0; v < net.node_count(); ++v) scaled.ensure_node(net.node(v).label);
        for (const Edge& e : net.edges()) scaled.add_edge(e.i, e.j, e.weight * lambda);
        for (const Edge& e : net.edges()) {
            CHECK(link_strength(scaled, e.i, e.j) ==
                  doctest::Approx(link_strength(net, e.i, e.j)).epsilon(1e-9));
        }
    }
}

TEST_CASE("normalize_association rewrites weights by Eq. (1) with frozen inputs") {
    Network net = unit_triangle();
    Network normalized = normalize_association(net);
    for (const Edge& e : normalized.edges()) CHECK(e.weight == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(is_normalized(normalized));
    CHECK(!is_normalized(net));

    // uniformity preserved on regular graphs
    Network k4 = complete(4);
    Network nk4 = normalize_association(k4);
    const double first = nk4.edges().front().weight;
    for (const Edge& e : nk4.edges()) CHECK(e.weight == doctest::Approx(first).epsilon(1e-12));
}

TEST_CASE("normalize_association matches per-edge oracle recomputation") {
    testutil::Rng rng(33);
    Network net = testutil::random_network(rng, 10, 0.5);
    Network normalized = normalize_association(net);
    for (const Edge& e : net.edges()) {
        CHECK(normalized.weight(e.i, e.j) ==
              doctest::Approx(testutil::association_oracle(net, e.i, e.j)).epsilon(1e-12));
    }
}

TEST_CASE("normalizing twice is guarded by the attribute flag") {
    Network net = unit_triangle();
    Network normalized = normalize_association(net);
    CHECK_THROWS_AS(normalize_association(normalized), AlreadyNormalized);
}

TEST_CASE("degree centrality: complete graph, star leaf, isolated node") {
    Network k5 = complete(5);
    for (int v = 0; v < 5; ++v) CHECK(degree_centrality(k5, v) == 1.0);

    Network star;  // 4-node star, center 0
    for (int v = 0; v < 4; ++v) star.ensure_node("s" + std::to_string(v));
    star.add_edge(0, 1, 1.0);
    star.add_edge(0, 2, 1.0);
    star.add_edge(0, 3, 1.0);
    CHECK(degree_centrality(star, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    Network eight;
    for (int v = 0; v < 8; ++v) eight.ensure_node("n" + std::to_string(v));
    eight.add_edge(0, 1, 1.0);
    CHECK(degree_centrality(eight, 7) == 0.0);

    Network one;
    one.ensure_node("only");
    CHECK_THROWS_AS(degree_centrality(one, 0), DegenerateGraph);
}

TEST_CASE("closeness centrality on the path A-B-C") {
    Network net = path3();
    CHECK(closeness_centrality(net, 1) == doctest::Approx(1.0).epsilon(1e-12));        // center
    CHECK(closeness_centrality(net, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));  // endpoint
}

TEST_CASE("closeness centrality of complete graphs is 1") {
    for (int n : {2, 4, 7}) {
        Network net = complete(n);
        for (int v = 0; v < n; ++v)
            CHECK(closeness_centrality(net, v) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("closeness handles disconnected graphs over reachable vertices only") {
    Network net;
    for (int v = 0; v < 5; ++v) net.ensure_node("n" + std::to_string(v));
    net.add_edge(0, 1, 1.0);
    net.add_edge(1, 2, 1.0);
    // nodes 3, 4 disconnected
    CHECK(closeness_centrality(net, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(closeness_centrality(net, 3) == 0.0);
}

TEST_CASE("closeness equals the BFS oracle on random graphs") {
    testutil::Rng rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        Network net = testutil::random_network(rng, 2 + static_cast<int>(rng.below(29)), 0.15);
        for (int v = 0; v < net.node_count(); ++v) {
            CHECK(closeness_centrality(net, v) ==
                  doctest::Approx(testutil::closeness_oracle(net, v)).epsilon(1e-12));
        }
    }
}

TEST_CASE("expected co-occurrence is (N-1) * p") {
    CHECK(expected_cooccurrence(11, 0.1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expected_cooccurrence(1, 0.7) == 0.0);
    CHECK_THROWS_AS(expected_cooccurrence(5, 1.5), BadProbability);
    CHECK_THROWS_AS(expected_cooccurrence(5, -0.1), BadProbability);
}

TEST_CASE("top link strength ranks by weight then label") {
    Network net;
    net.ensure_node("focus");
    net.ensure_node("zeta");
    net.ensure_node("alpha");
    net.ensure_node("mid");
    net.add_edge(0, 1, 2.0);  // zeta, weight 2
    net.add_edge(0, 2, 2.0);  // alpha, weight 2
    net.add_edge(0, 3, 5.0);  // mid, weight 5
    auto ranked = top_link_strength(net, "focus", 10);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].label == "mid");
    CHECK(ranked[1].label == "alpha");  // tie resolved alphabetically
    CHECK(ranked[2].label == "zeta");

    // k larger than the neighbor count: full list, no padding
    CHECK(top_link_strength(net, "focus", 99).size() == 3);
    CHECK(top_link_strength(net, "focus", 2).size() == 2);
    CHECK_THROWS_AS(top_link_strength(net, "nobody", 3), UnknownNode);
}

TEST_CASE("source summary sums documents and citations per source") {
    std::vector<PublicationRecord> records;
    for (int i = 0; i < 3; ++i) {
        PublicationRecord rec = testutil::make_record("a" + std::to_string(i));
        rec.source_title = "Journal A";
        rec.cited_by = i == 0 ? 3 : (i == 1 ? 0 : 7);
        records.push_back(rec);
    }
    PublicationRecord other = testutil::make_record("b0");
    other.source_title = "Journal B";
    other.cited_by = 1;
    records.push_back(other);

    Corpus corpus;
    corpus.tag = "t";
    for (const auto& rec : records) corpus.records.emplace(rec.record_id, rec);

    auto rows = source_summary(corpus);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].source_title == "Journal A");  // most documents first
    CHECK(rows[0].document_count == 3);
    CHECK(rows[0].citation_count == 10);
    CHECK(rows[0].more_cited_than_documents);  // 10 > 3
    CHECK(rows[1].document_count == 1);
    CHECK(!rows[1].more_cited_than_documents);  // 1 > 1 is false

    Corpus empty;
    CHECK_THROWS_AS(source_summary(empty), EmptyCorpus);
}

TEST_CASE("metric report rows carry the four per-node columns") {
    Network net = path3();
    MetricReport report = MetricReport::compute(net);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.node_count == 3);
    CHECK(report.total_weight == 2.0);
    CHECK(report.rows[1].label == "B");
    CHECK(report.rows[1].link_count == 2);
    CHECK(report.rows[1].total_link_strength == 2.0);
    CHECK(report.rows[1].degree_centrality == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.rows[1].closeness_centrality == doctest::Approx(1.0).epsilon(1e-12));

    std::ostringstream csv;
    report.write_csv(csv);
    CHECK(csv.str() ==
          "label,links,total_link_strength,degree_centrality,closeness_centrality\n"
          "A,1,1,0.5,0.666667\n"
          "B,2,2,1,1\n"
          "C,1,1,0.5,0.666667\n");
}

TEST_CASE("metric report table ranks by total link strength") {
    Network net;
    net.ensure_node("USA");
    net.ensure_node("UK");
    net.ensure_node("Malaysia");
    net.add_edge(0, 1, 5.0);
    net.add_edge(0, 2, 2.0);
    std::ostringstream out;
    MetricReport::compute(net).write_table(out, 2);
    CHECK(out.str() ==
          "Label  Link Strength\n"
          "USA    7\n"
          "UK     5\n");
}
