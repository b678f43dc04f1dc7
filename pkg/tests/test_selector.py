import random

import pytest

from referat.errors import InvalidClipFactor, InvalidLimit
from referat.selector import (
    Candidate,
    content_signature,
    order_output,
    rank,
    select_summary,
    similarity,
)

from helpers import sentence

EMPTY = frozenset()


def cand(doc_id, sid, text, q):
    return Candidate.build(doc_id, sentence(sid, text, "en"), q, EMPTY)


def brute_force_rank(candidates, clip):
    """Independent simulator: recompute every penalty from scratch each round."""
    remaining = list(candidates)
    picked = []
    while remaining:
        scores = []
        for c in remaining:
            p = c.q
            for b in picked:
                inter = len(c.signature & b.signature)
                union = len(c.signature | b.signature)
                sim = inter / union if union else 0.0
                p = p / (1.0 + clip * sim)
            scores.append((p, -c.sentence.id, -c.doc_id, c))
        scores.sort(key=lambda item: item[:3], reverse=True)
        best = scores[0][3]
        remaining.remove(best)
        picked.append(best)
    return picked


class TestSimilarity:
    def test_identical_sentences(self):
        a = sentence(0, "alpha bravo charlie", "en")
        assert similarity(a, a, EMPTY) == 1.0

    def test_disjoint_sentences(self):
        a = sentence(0, "alpha bravo", "en")
        b = sentence(1, "charlie delta", "en")
        assert similarity(a, b, EMPTY) == 0.0

    def test_half_overlap(self):
        a = sentence(0, "alpha bravo charlie", "en")
        b = sentence(1, "bravo charlie delta", "en")
        assert similarity(a, b, EMPTY) == 0.5

    def test_empty_signatures(self):
        a = sentence(0, "an of", "en")
        b = sentence(1, "it to", "en")
        assert similarity(a, b, EMPTY) == 0.0

    def test_stopwords_and_short_norms_excluded(self):
        a = sentence(0, "the system is on", "en")
        sig = content_signature(a, frozenset({"the"}))
        assert sig == {"system"}


class TestRank:
    def test_dissimilar_candidates_sort_by_q(self):
        cands = [
            cand(0, 0, "alpha bravo", 3.0),
            cand(0, 1, "charlie delta", 2.0),
            cand(0, 2, "echo foxtrot", 1.0),
        ]
        out = rank(list(reversed(cands)), 2.0)
        assert [c.q for c in out] == [3.0, 2.0, 1.0]

    def test_duplicate_clipped_behind_dissimilar(self):
        x = cand(0, 0, "alpha bravo charlie delta", 3.0)
        dup = cand(0, 1, "alpha bravo charlie delta", 2.9)
        y = cand(0, 2, "echo foxtrot golf hotel", 1.5)
        out = rank([x, dup, y], 10.0)
        assert [c.sentence.id for c in out] == [0, 2, 1]
        assert out[2].p == pytest.approx(2.9 / 11.0)

    def test_single_candidate(self):
        only = cand(0, 0, "alpha", 1.2)
        assert rank([only], 2.0) == [only]

    @pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
    def test_bad_clip_factor_rejected(self, bad):
        with pytest.raises(InvalidClipFactor):
            rank([cand(0, 0, "alpha", 1.0)], bad)

    def test_nonpositive_usefulness_rejected(self):
        with pytest.raises(ValueError):
            rank([cand(0, 0, "alpha", 0.0)], 2.0)

    def test_matches_brute_force_on_small_sets(self):
        rng = random.Random(99)
        vocab = ["alpha", "bravo", "charlie", "delta", "echo", "fox", "golf", "hotel"]
        for case in range(30):
            n = rng.randint(1, 6)
            cands = [
                cand(
                    rng.randint(0, 1),
                    i,
                    " ".join(rng.sample(vocab, rng.randint(2, 5))),
                    rng.uniform(0.01, 4.0),
                )
                for i in range(n)
            ]
            clip = rng.choice([0.5, 2.0, 10.0])
            expected = brute_force_rank(cands, clip)
            got = rank(cands, clip)
            assert [id(c) for c in got] == [id(c) for c in expected], f"case {case}"

    def test_order_independent_of_input_order(self):
        rng = random.Random(4)
        cands = [
            cand(0, i, " ".join(rng.sample(["a1", "b2", "c3", "d4", "e5"], 3)), rng.uniform(0.1, 4))
            for i in range(6)
        ]
        baseline = [c.sentence.id for c in rank(list(cands), 2.0)]
        for _ in range(5):
            shuffled = list(cands)
            rng.shuffle(shuffled)
            assert [c.sentence.id for c in rank(shuffled, 2.0)] == baseline

    def test_penalty_strictly_decreases_similar_only(self):
        x = cand(0, 0, "alpha bravo", 3.0)
        near = cand(0, 1, "alpha charlie", 2.0)
        far = cand(0, 2, "delta echo", 1.0)
        rank([x, near, far], 2.0)
        assert near.p < near.q
        assert far.p == far.q


class TestSelectSummary:
    def _ranked(self, n):
        return [cand(0, i, f"word{i} token{i}", float(n - i)) for i in range(n)]

    def test_ratio_takes_ceiling(self):
        assert len(select_summary(self._ranked(10), ratio=0.3)) == 3

    def test_ratio_minimum_one(self):
        assert len(select_summary(self._ranked(2), ratio=0.1)) == 1

    def test_count_truncates_to_available(self):
        assert len(select_summary(self._ranked(3), max_sentences=5)) == 3

    def test_invalid_limits_rejected(self):
        ranked = self._ranked(3)
        with pytest.raises(InvalidLimit):
            select_summary(ranked, ratio=0.0)
        with pytest.raises(InvalidLimit):
            select_summary(ranked, ratio=1.5)
        with pytest.raises(InvalidLimit):
            select_summary(ranked, max_sentences=0)
        with pytest.raises(InvalidLimit):
            select_summary(ranked)
        with pytest.raises(InvalidLimit):
            select_summary(ranked, ratio=0.5, max_sentences=2)


class TestOrderOutput:
    def test_positional_sort(self):
        picked = [cand(0, i, f"w{i}", 1.0 + i) for i in (7, 2, 4)]
        assert [c.sentence.id for c in order_output(picked)] == [2, 4, 7]

    def test_document_major_order(self):
        a = cand(0, 3, "alpha", 1.0)
        b = cand(1, 1, "bravo", 2.0)
        assert [(c.doc_id, c.sentence.id) for c in order_output([b, a])] == [(0, 3), (1, 1)]

    def test_empty_selection(self):
        assert order_output([]) == []
