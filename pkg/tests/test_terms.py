import math

import numpy as np
import pytest

from netergm import (
    ConfigError,
    DimensionError,
    DirectedGraph,
    InvalidDyadError,
    TermSpec,
    UnknownAttributeError,
    build_graph,
    change_stat_matrices,
    change_stats,
    global_stats,
    parse_term,
    parse_terms,
)
from netergm.terms import split_term_list
from helpers import naive_change_stat, naive_global_stats, random_graph, simple_table


ALL_KINDS = (
    "edges",
    "mutual",
    "isolates",
    "odegpop",
    "gwesp(0.7)",
    "gwdsp(0.7)",
    "nodematch(team)",
    "nodematch(team, red)",
)


def team_table(n, rng=None):
    if rng is None:
        vals = tuple("red" if k % 2 == 0 else "blue" for k in range(n))
    else:
        vals = tuple(rng.choice(("red", "blue", "green"), size=n))
    return simple_table(
        tuple(f"n{k}" for k in range(n)),
        levels={"team": ("blue", "green", "red")},
        team=vals,
    )


class TestParsing:
    def test_plain_keywords(self):
        assert parse_term("edges") == TermSpec("edges")
        assert parse_term("MUTUAL") == TermSpec("mutual")
        assert parse_term(" isolates ") == TermSpec("isolates")
        assert parse_term("odegpop") == TermSpec("odegpop")

    def test_decay_terms(self):
        assert parse_term("gwesp(0.5)") == TermSpec("gwesp", decay=0.5)
        assert parse_term("GWDSP( 1.25 )") == TermSpec("gwdsp", decay=1.25)

    def test_nodematch_forms(self):
        assert parse_term("nodematch(team)") == TermSpec("nodematch", attribute="team")
        assert parse_term("nodematch(team, red)") == TermSpec(
            "nodematch", attribute="team", level="red"
        )

    def test_errors_carry_positions(self):
        with pytest.raises(ConfigError, match="position 8"):
            parse_term("gwesp(0.5")
        with pytest.raises(ConfigError):
            parse_term("gwesp()")
        with pytest.raises(ConfigError):
            parse_term("gwesp(abc)")
        with pytest.raises(ConfigError):
            parse_term("banana")
        with pytest.raises(ConfigError):
            parse_term("edges(3)")

    def test_negative_decay_rejected(self):
        with pytest.raises(ConfigError):
            parse_term("gwesp(-1)")

    def test_duplicate_terms_rejected(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_terms(("edges", "edges"))
        with pytest.raises(ConfigError):
            parse_terms(("gwesp(0.5)", "gwesp(0.50)"))

    def test_split_respects_parentheses(self):
        assert split_term_list("edges, nodematch(team, red), gwesp(0.5)") == [
            "edges",
            "nodematch(team, red)",
            "gwesp(0.5)",
        ]

    def test_parse_terms_accepts_string_or_sequence(self):
        a = parse_terms("edges, mutual")
        b = parse_terms(("edges", "mutual"))
        assert a.names == b.names == ("edges", "mutual")


class TestGlobalStats:
    def test_hand_computed_small_graph(self):
        # 0->1, 1->0, 1->2, 0->2: one mutual pair, no isolates
        g = build_graph(4, [(0, 1), (1, 0), (1, 2), (0, 2)])
        spec = parse_terms(("edges", "mutual", "isolates", "odegpop"))
        np.testing.assert_allclose(
            global_stats(g, None, spec),
            # odegpop: indeg*outdeg summed = 1*2 + 1*2 + 2*0 + 0*0
            [4, 1, 1, 4],
        )

    def test_gwesp_single_shared_partner(self):
        g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
        tau = 0.5
        spec = parse_terms((f"gwesp({tau})",))
        # only edge 0->2 has a shared partner (via 1), weight w(1)
        w1 = math.exp(tau) * (1 - (1 - math.exp(-tau)) ** 1)
        np.testing.assert_allclose(global_stats(g, None, spec), [w1])

    def test_gwdsp_counts_open_two_paths(self):
        g = build_graph(3, [(0, 1), (1, 2)])
        spec = parse_terms(("gwdsp(0.5)",))
        w1 = math.exp(0.5) * (1 - (1 - math.exp(-0.5)) ** 1)
        np.testing.assert_allclose(global_stats(g, None, spec), [w1])

    def test_zero_decay_counts_support(self):
        # tau=0 turns the weight into an indicator of >=1 shared partner
        g = build_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        spec = parse_terms(("gwesp(0)", "gwdsp(0)"))
        got = global_stats(g, None, spec)
        np.testing.assert_allclose(got, naive_global_stats(g, None, spec))

    def test_nodematch_uniform_and_level(self):
        g = build_graph(4, [(0, 2), (0, 1), (1, 3)])
        table = simple_table(
            ("a", "b", "c", "d"), team=("red", "blue", "red", "blue")
        )
        spec = parse_terms(
            ("nodematch(team)", "nodematch(team, red)", "nodematch(team, blue)")
        )
        np.testing.assert_allclose(global_stats(g, table, spec), [2, 1, 1])

    def test_matches_naive_oracle(self):
        rng = np.random.default_rng(31)
        spec = parse_terms(ALL_KINDS)
        for _ in range(30):
            n = int(rng.integers(3, 11))
            g = random_graph(rng, n, rng.random() * 0.7)
            table = team_table(n, rng)
            np.testing.assert_allclose(
                global_stats(g, table, spec),
                naive_global_stats(g, table, spec),
                atol=1e-12,
            )

    def test_permutation_invariance(self):
        rng = np.random.default_rng(32)
        spec = parse_terms(ALL_KINDS)
        n = 9
        g = random_graph(rng, n, 0.4)
        table = team_table(n, rng)
        base = global_stats(g, table, spec)
        perm = rng.permutation(n)
        relabeled = DirectedGraph(
            n, frozenset((int(perm[i]), int(perm[j])) for i, j in g.edges)
        )
        inv = np.argsort(perm)
        per_table = simple_table(
            tuple(f"m{k}" for k in range(n)),
            team=tuple(table.values("team")[inv[k]] for k in range(n)),
        )
        np.testing.assert_allclose(
            global_stats(relabeled, per_table, spec), base, atol=1e-12
        )

    def test_attrs_required_for_nodematch(self):
        g = build_graph(3, [(0, 1)])
        with pytest.raises(UnknownAttributeError):
            global_stats(g, None, parse_terms(("nodematch(team)",)))

    def test_attrs_size_mismatch(self):
        g = build_graph(3, [(0, 1)])
        table = team_table(4)
        with pytest.raises(DimensionError):
            global_stats(g, table, parse_terms(("nodematch(team)",)))


class TestChangeStats:
    def test_isolates_delta_on_empty_graph(self):
        g = DirectedGraph(3, frozenset())
        spec = parse_terms(("isolates",))
        np.testing.assert_allclose(change_stats(g, None, (0, 1), spec), [-2])

    def test_mutual_delta_needs_reverse_edge(self):
        g = build_graph(3, [(1, 0)])
        spec = parse_terms(("mutual",))
        np.testing.assert_allclose(change_stats(g, None, (0, 1), spec), [1])
        np.testing.assert_allclose(change_stats(g, None, (0, 2), spec), [0])

    def test_rejects_loop_dyad(self):
        g = build_graph(3, [(0, 1)])
        with pytest.raises(InvalidDyadError):
            change_stats(g, None, (1, 1), parse_terms("edges"))

    def test_delta_matches_naive_toggle(self):
        rng = np.random.default_rng(33)
        spec = parse_terms(ALL_KINDS)
        for _ in range(25):
            n = int(rng.integers(3, 10))
            g = random_graph(rng, n, rng.random() * 0.6)
            table = team_table(n, rng)
            i = int(rng.integers(0, n))
            j = int(rng.integers(0, n - 1))
            j += j >= i
            np.testing.assert_allclose(
                change_stats(g, table, (i, j), spec),
                naive_change_stat(g, table, (i, j), spec),
                atol=1e-12,
            )

    def test_matrix_route_agrees_with_scalar_route(self):
        rng = np.random.default_rng(34)
        spec = parse_terms(ALL_KINDS)
        for _ in range(10):
            n = int(rng.integers(3, 9))
            g = random_graph(rng, n, rng.random() * 0.6)
            table = team_table(n, rng)
            mats = change_stat_matrices(g, table, spec)
            assert mats.shape == (len(spec.terms), n, n)
            for i in range(n):
                for j in range(n):
                    if i == j:
                        np.testing.assert_allclose(mats[:, i, j], 0.0)
                        continue
                    np.testing.assert_allclose(
                        mats[:, i, j],
                        change_stats(g, table, (i, j), spec),
                        atol=1e-10,
                    )

    def test_delta_direction_sign(self):
        # the delta is always "statistic with the edge minus without"
        g = build_graph(3, [(0, 1)])
        spec = parse_terms("edges")
        np.testing.assert_allclose(change_stats(g, None, (0, 1), spec), [1])
        np.testing.assert_allclose(change_stats(g, None, (1, 2), spec), [1])
