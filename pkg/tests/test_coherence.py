import random

import pytest

from coherex import bayes
from coherex.candidates import generate_candidates
from coherex.coherence import (
    assemble,
    association_features,
    feature_names,
    first_pass,
    percentile_rank,
    rank_candidates,
)
from coherex.errors import ContractViolation
from coherex.features import DiscretizationScheme
from coherex.hits import HitCache, build_index
from coherex.text import Corpus, Document, tokenize

from .oracles import brute_force_score_cap, brute_force_score_low


def toy_model():
    # single feature, two intervals; interval 1 leans keyphrase
    return bayes.train(
        [[0], [0], [0], [1], [1], [1], [1]],
        [False, False, True, True, True, False, True],
        ["tfidf"],
        [2],
    )


def toy_schemes():
    return [DiscretizationScheme("tfidf", (0.5,))]


def make_candidates(n, rng=None):
    text = " ".join(f"word{i}" for i in range(n))
    return generate_candidates(Document("d", tokenize(text)))


class TestPercentileRank:
    def test_distinct_scores(self):
        assert percentile_rank([0.9, 0.5, 0.1]) == [1.0, 0.5, 0.0]

    def test_tie_averaging(self):
        assert percentile_rank([0.3, 0.3]) == [0.5, 0.5]

    def test_single_score(self):
        assert percentile_rank([0.7]) == [1.0]

    def test_permutation_of_canonical_grid(self):
        rng = random.Random(1)
        scores = rng.sample(range(1000), 100)
        pcts = percentile_rank([s / 1000 for s in scores])
        assert sorted(pcts) == pytest.approx([i / 99 for i in range(100)])

    def test_tied_block_gets_mean_of_positions(self):
        pcts = percentile_rank([5.0, 1.0, 5.0, 9.0])
        # ascending ranks: 1.0->0; 5.0,5.0->(1+2)/2; 9.0->3; denominator 3
        assert pcts == pytest.approx([0.5, 0.0, 0.5, 1.0])


class TestFirstPass:
    def base_vectors(self, cands, values):
        return {c.key: [v] for c, v in zip(cands, values)}

    def test_truncates_to_l(self):
        cands = make_candidates(60)  # singles + bigrams + trigrams > 100
        values = [float(i % 2) for i in range(len(cands))]
        ranking = first_pass(
            cands, self.base_vectors(cands, values), toy_model(), toy_schemes(),
            K=4, L=100,
        )
        assert len(cands) > 100
        assert len(ranking.ranked) == 100

    def test_degenerate_anchor_count(self):
        cands = make_candidates(2)  # 3 candidates: two singles + one bigram
        values = [1.0, 0.0, 1.0]
        ranking = first_pass(
            cands, self.base_vectors(cands, values), toy_model(), toy_schemes(),
            K=4, L=100,
        )
        assert len(ranking.ranked) == 3
        assert len(ranking.anchors) == 3

    def test_probabilities_nonincreasing(self):
        cands = make_candidates(10)
        rng = random.Random(2)
        values = [rng.random() for _ in cands]
        ranking = first_pass(
            cands, self.base_vectors(cands, values), toy_model(), toy_schemes(),
            K=2, L=20,
        )
        probs = [p for _, p in ranking.ranked]
        assert probs == sorted(probs, reverse=True)

    def test_tie_broken_by_tfidf(self):
        cands = make_candidates(3)
        # same interval (same posterior) but distinct raw TF*IDF
        values = [0.9, 0.7, 0.8, 0.6, 0.95, 0.65]
        values = values[: len(cands)]
        ranking = first_pass(
            cands, self.base_vectors(cands, values), toy_model(), toy_schemes(),
            K=1, L=10,
        )
        ranked_tfidf = [values[cands.index(c)] for c, _ in ranking.ranked]
        assert ranked_tfidf == sorted(ranked_tfidf, reverse=True)

    def test_k_must_be_less_than_l(self):
        cands = make_candidates(4)
        with pytest.raises(ContractViolation):
            first_pass(cands, self.base_vectors(cands, [0.0] * len(cands)),
                       toy_model(), toy_schemes(), K=5, L=5)


HITS_PAGES = [
    "Alpha Beta runs with gamma and delta",
    "alpha beta again with Epsilon Zeta",
    "Gamma Delta alone",
    "epsilon zeta and alpha",
    "unrelated filler page",
]


def hits_index():
    docs = [Document(f"p{i}", tokenize(t)) for i, t in enumerate(HITS_PAGES)]
    return build_index(Corpus(docs, "hits"))


def ranking_for(words, K=2, L=50):
    text = " ".join(words)
    cands = generate_candidates(Document("d", tokenize(text)))
    values = [float(len(words) - i) for i in range(len(cands))]
    base = {c.key: [v, 0.25] for c, v in zip(cands, values)}
    return first_pass(cands, base, toy_model(), toy_schemes(), K, L), base


class TestAssociationFeatures:
    def test_matches_brute_force(self):
        ranking, _ = ranking_for(
            ["alpha", "beta", "gamma", "delta", "epsilon", "zeta",
             "filler", "unrelated", "page", "runs"], K=2,
        )
        index = hits_index()
        result = association_features(ranking, index)
        pages = [t.split() for t in HITS_PAGES]
        anchors = [c.preferred_surface.split() for c, _ in ranking.anchors]
        n = len(ranking.ranked)
        for j, anchor in enumerate(anchors):
            lows = [
                brute_force_score_low(pages, c.preferred_surface.split(), anchor)
                for c, _ in ranking.ranked
            ]
            caps = [
                brute_force_score_cap(pages, c.preferred_surface.split(), anchor)
                for c, _ in ranking.ranked
            ]
            exp_low = percentile_rank(lows)
            exp_cap = percentile_rank(caps)
            for i in range(n):
                assert result[i][0][j] == pytest.approx(exp_low[i])
                assert result[i][1][j] == pytest.approx(exp_cap[i])

    def test_percentiles_in_unit_interval(self):
        ranking, _ = ranking_for(["alpha", "beta", "gamma", "nonsense"], K=2)
        result = association_features(ranking, hits_index())
        for lows, caps in result:
            assert all(0.0 <= v <= 1.0 for v in lows + caps)

    def test_anchors_receive_features_too(self):
        ranking, _ = ranking_for(["alpha", "beta", "gamma"], K=2)
        result = association_features(ranking, hits_index())
        assert len(result) == len(ranking.ranked)

    def test_warm_cache_reproduces_values(self):
        ranking, _ = ranking_for(["alpha", "beta", "gamma", "delta"], K=2)
        index = hits_index()
        cache = HitCache()
        cold = association_features(ranking, index, cache)
        issued = cache.queries_issued
        cache.reset_counter()
        warm = association_features(ranking, index, cache)
        assert warm == cold
        assert issued > 0
        assert cache.queries_issued == 0


class TestAssemble:
    def rows(self, K, merged, n_words=6):
        ranking, base = ranking_for(
            ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"][:n_words], K=K
        )
        association = association_features(ranking, hits_index())
        keyfreq = {c.key: 2 for c, _ in ranking.ranked} if merged else None
        return ranking, assemble(ranking, base, association, merged, keyfreq)

    def test_coherence_arity_twelve_at_k4(self):
        _, rows = self.rows(K=4, merged=False)
        assert all(len(r) == 12 for r in rows)
        assert len(feature_names(4, False)) == 12

    def test_merged_arity_thirteen_at_k4(self):
        _, rows = self.rows(K=4, merged=True)
        assert all(len(r) == 13 for r in rows)
        names = feature_names(4, True)
        assert len(names) == 13
        assert names[2:4] == ["key_freq_rank", "key_freq_probability"]
        assert names[-1] == "keyphrase_frequency"

    def test_four_plus_two_k(self):
        for k in (1, 2, 3):
            _, rows = self.rows(K=k, merged=False)
            assert all(len(r) == 4 + 2 * k for r in rows)

    def test_rank_field_is_one_based_position(self):
        ranking, rows = self.rows(K=2, merged=False)
        assert [r[2] for r in rows] == [float(i) for i in range(1, len(rows) + 1)]

    def test_probability_field_copies_first_pass(self):
        ranking, rows = self.rows(K=2, merged=False)
        for row, (_, prob) in zip(rows, ranking.ranked):
            assert row[3] == prob

    def test_length_mismatch_rejected(self):
        ranking, base = ranking_for(["alpha", "beta", "gamma"], K=2)
        with pytest.raises(ContractViolation):
            assemble(ranking, base, [])


class TestRankCandidates:
    def test_deterministic_full_chain(self):
        cands = make_candidates(3)
        probs = [0.5] * len(cands)
        tfidfs = [0.5] * len(cands)
        ranked = rank_candidates(cands, probs, tfidfs)
        # equal prob and tfidf: earlier first occurrence wins, then key
        firsts = [c.first_occurrence_word_index for c, _ in ranked]
        assert firsts == sorted(firsts)
