import random
from collections import defaultdict

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pscfr.fosg import (EMPTY_ENTRY, NOOP, START, GameError, InfoState, build_public_tree, check_sbg,
                        check_token, enumerate_counts, initial_history, iter_histories, successors)
from pscfr.games import ZOO

from conftest import game


def test_kuhn_root_deals_six_permutations(kuhn):
    succ = successors(kuhn, initial_history(kuhn))
    assert len(succ) == 6
    assert all(p == pytest.approx(1 / 6) for _, _, p in succ)
    assert all(joint == (NOOP, NOOP) for joint, _, _ in succ)


def test_kuhn_infostate_key_after_deal(kuhn):
    _, h, _ = next(s for s in successors(kuhn, initial_history(kuhn)) if s[1].world[0] == "J")
    assert h.infostate_key(0) == "1:.J|start"
    assert h.public_key() == START


def test_key_entries_align_with_depth(kuhn):
    for h in iter_histories(kuhn):
        for i in range(2):
            assert len(h.private[i]) == h.depth == len(h.public)


def test_own_action_enters_private_part(kuhn):
    h = initial_history(kuhn)
    h = next(c for _, c, _ in successors(kuhn, h) if c.world[:2] == ("K", "Q"))
    joint, h, _ = successors(kuhn, h)[0]
    assert joint == ("p", NOOP)
    assert h.infostate_key(0) == "1:.K/p|start/p"
    assert h.infostate_key(1) == f"2:.Q/{EMPTY_ENTRY}|start/p"


def test_successors_of_terminal_raise(kuhn):
    z = next(h for h in iter_histories(kuhn) if h.terminal)
    with pytest.raises(GameError):
        successors(kuhn, z)


@pytest.mark.parametrize("token", ["a/b", "a|b", "a.b", "a:b", "a b", EMPTY_ENTRY])
def test_check_token_rejects_reserved(token):
    with pytest.raises(GameError):
        check_token(token)


@given(
    player=st.integers(0, 4),
    private=st.lists(st.from_regex(r"[a-z0-9]{1,3}(\.[A-Z]{1,2})?", fullmatch=True), max_size=4),
    public=st.lists(st.from_regex(r"[a-z0-9]{1,4}", fullmatch=True), min_size=1, max_size=4),
)
def test_infostate_key_round_trip(player, private, public):
    private = private + [EMPTY_ENTRY] * (len(public) - len(private))
    s = InfoState(player, tuple(private[: len(public)]), tuple(public))
    assert InfoState.parse(s.key) == s


def test_counts_match_small_oracles():
    # rock-paper-scissors with a hidden first move: root, 3 after P1, 9 terminals
    c = enumerate_counts(game("rps_efg"))
    assert (c.num_histories, c.num_terminals, c.num_decision_infostates) == (13, 9, (1, 1))
    k = enumerate_counts(game("kuhn"))
    # 1 root + 6 deals + 6 * (2 + 2 + 2 + 2) betting continuations
    assert k.num_histories == 1 + 6 + 6 * 8
    assert k.num_terminals == 6 * 5
    assert k.total_decision_infostates == 12


def test_liars_dice_history_count():
    # every nonempty increasing bid sequence over 8 bids, each optionally called, per deal
    per_deal = 1 + (2 ** 8 - 1) * 2
    assert enumerate_counts(game("liars_dice:d=1,f=4")).num_histories == 1 + 16 * per_deal


@pytest.mark.parametrize("spec", ZOO)
def test_public_tree_partitions_histories(spec):
    g = game(spec)
    root = build_public_tree(g)
    by_public = defaultdict(lambda: [set() for _ in range(g.num_players)])
    count = 0
    for h in iter_histories(g):
        count += 1
        for i in range(g.num_players):
            by_public[h.public_key()][i].add(h.private_key(i))
    nodes = list(root.walk())
    assert sum(n.num_histories for n in nodes) == count
    assert len(nodes) == len(by_public)
    for node in nodes:
        assert [set(p) for p in node.private] == by_public[node.key]


@pytest.mark.parametrize("spec", ZOO)
def test_public_tree_parent_maps_are_total(spec):
    root = build_public_tree(game(spec))
    for node in root.walk():
        for t, child in enumerate(node.children):
            for i in range(node.num_players):
                idx, act = node.parent_index[t][i], node.parent_action[t][i]
                assert len(idx) == len(child.private[i])
                for j, a in zip(idx, act):
                    assert 0 <= j < len(node.private[i])
                    assert 0 <= a < len(node.actions[i][j])


EXPECTED_SBG = {
    "kuhn": "pass",
    "leduc": "pass",
    "rps_efg": "fail(iii)",
    "rps_nfg": "pass",
    "mp_seq": "fail(iii)",
    "mp_sb": "pass",
    "liars_dice:d=1,f=4": "pass",
    "river:deck=12,hand=1,pot=200,stack=1000,abs=fcpa": "pass",
}


@pytest.mark.parametrize("spec", ZOO)
def test_sbg_verdicts(spec):
    assert check_sbg(game(spec)).verdict() == EXPECTED_SBG[spec]


def test_mp_seq_witness_names_condition_three():
    report = check_sbg(game("mp_seq"))
    assert report.failed_conditions == ("iii",)
    assert "share public observation" in report.witnesses["iii"]


@given(seed=st.integers(0, 2 ** 32 - 1))
def test_sbg_verdict_independent_of_history_order(seed):
    for spec in ("kuhn", "mp_seq", "mp_sb"):
        hs = list(iter_histories(game(spec)))
        random.Random(seed).shuffle(hs)
        assert check_sbg(game(spec), hs).verdict() == EXPECTED_SBG[spec]
