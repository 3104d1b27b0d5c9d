#include <doctest.h>

#include <set>
#include <sstream>
#include <utility>

#include "ecv/graph.hpp"
#include "ecv/rng.hpp"

using namespace ecv;

TEST_SUITE("graph") {

    TEST_CASE("fresh graph is empty") {
        const graph g(5);
        CHECK(g.order() == 5);
        CHECK(g.edge_count() == 0);
        CHECK(g.concurrent_count() == 0);
        CHECK(g.order_parameter() == 1.0);
        CHECK_FALSE(g.has_edge(0, 4));
        CHECK_THROWS(graph(0));
    }

    TEST_CASE("toggle maintains statistics through random updates") {
        const int n = 7;
        graph g(n);
        rng::stream rs(20260814);
        for (int step = 1; step <= 1000; ++step) {
            const int i = static_cast<int>(rs.below(static_cast<std::uint64_t>(n)));
            int j = static_cast<int>(rs.below(static_cast<std::uint64_t>(n - 1)));
            if (j >= i) ++j;
            g.toggle_edge(i, j);
            if (step % 100 == 0) REQUIRE(g.consistent_with_recount());
        }
        REQUIRE(g.consistent_with_recount());
        // double toggle restores the exact state
        const graph before = g;
        g.toggle_edge(2, 5);
        g.toggle_edge(2, 5);
        CHECK(g == before);
    }

    TEST_CASE("change score counts endpoints at degree one") {
        graph g(5);
        CHECK(g.change_score(0, 1) == std::pair{1, 0});  // two isolates
        g.set_edge(0, 1, true);
        CHECK(g.change_score(0, 2) == std::pair{1, 1});  // pendant + isolate
        g.set_edge(2, 3, true);
        CHECK(g.change_score(1, 2) == std::pair{1, 2});  // two pendants
        g.set_edge(0, 2, true);
        // vertex 0 already concurrent: adding a third tie changes nothing
        CHECK(g.change_score(0, 4) == std::pair{1, 0});
        // focal edge present: score is evaluated with it forced absent
        CHECK(g.change_score(0, 1) == std::pair{1, 1});
    }

    TEST_CASE("dyad classification forces the focal edge absent") {
        graph g(5);
        g.set_edge(0, 1, true);
        CHECK(g.classify_dyad(0, 1) == dyad_class::II);  // the lone edge itself
        CHECK(g.classify_dyad(0, 2) == dyad_class::PI);
        CHECK(g.classify_dyad(2, 0) == dyad_class::PI);  // order-insensitive
        g.set_edge(0, 2, true);
        g.set_edge(0, 3, true);  // vertex 0 now has degree 3
        CHECK(g.classify_dyad(0, 4) == dyad_class::IC);
        CHECK(g.classify_dyad(0, 1) == dyad_class::IC);  // without (0,1): deg 2 vs 0
        CHECK(g.classify_dyad(1, 2) == dyad_class::PP);
        g.set_edge(1, 4, true);
        g.set_edge(2, 4, true);
        CHECK(g.classify_dyad(1, 2) == dyad_class::CC);
    }

    TEST_CASE("edge_at enumerates exactly the current edges") {
        graph g(6);
        g.set_edge(0, 1, true);
        g.set_edge(2, 4, true);
        g.set_edge(1, 5, true);
        g.set_edge(2, 4, false);
        std::set<std::pair<int, int>> listed;
        for (int k = 0; k < g.edge_count(); ++k) {
            auto [i, j] = g.edge_at(k);
            listed.insert(std::minmax(i, j));
        }
        CHECK(listed == std::set<std::pair<int, int>>{{0, 1}, {1, 5}});
    }

    TEST_CASE("self loops and bad vertices are rejected") {
        graph g(4);
        CHECK_THROWS(g.toggle_edge(2, 2));
        CHECK_THROWS(g.toggle_edge(-1, 2));
        CHECK_THROWS(g.toggle_edge(0, 4));
    }

    TEST_CASE("order parameter runs from all-sparse to all-concurrent") {
        graph g(4);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) g.set_edge(i, j, true);
        CHECK(g.concurrent_count() == 4);
        CHECK(g.order_parameter() == 0.0);
        CHECK(g.edge_count() == 6);
    }

    TEST_CASE("edge list round trip") {
        graph g(9);
        rng::stream rs(99);
        for (int t = 0; t < 40; ++t) {
            const int i = static_cast<int>(rs.below(9));
            int j = static_cast<int>(rs.below(8));
            if (j >= i) ++j;
            g.toggle_edge(i, j);
        }
        std::stringstream buf;
        write_edge_list(buf, g);
        const graph back = read_edge_list(buf);
        CHECK(back == g);
        CHECK(back.concurrent_count() == g.concurrent_count());
    }

    TEST_CASE("edge list reader rejects malformed input") {
        std::stringstream bad1{"Q 5\n0 1\n"};
        CHECK_THROWS(read_edge_list(bad1));
        std::stringstream bad2{"N 3\n0 3\n"};
        CHECK_THROWS(read_edge_list(bad2));
        std::stringstream bad3{"N 3\n1 1\n"};
        CHECK_THROWS(read_edge_list(bad3));
    }
}
