import math

import numpy as np
import pytest

from core.errors import LearningError
from core.model.concept import TOP, Atomic
from core.model.knowledge_base import KnowledgeBase
from core.model.task import Label, LearningTask
from core.service.learner_service import Learner, StageInputs, classify, learn
from core.service.reasoner import Reasoner


def stage(kb, positives, negatives, theta=0.5, eta=1.0, pos=None, **kwargs) -> StageInputs:
    positives, negatives = frozenset(positives), frozenset(negatives)
    return StageInputs(
        target="T", pos=frozenset(pos) if pos is not None else positives, positives=positives,
        negatives=negatives, unlabelled=kb.individuals - positives - negatives,
        theta=theta, eta=eta, max_conjuncts=kwargs.get("max_conjuncts", 5),
        max_role_depth=kwargs.get("max_role_depth", 1), backtrack=kwargs.get("backtrack", 5),
    )


class TestGain:
    @pytest.fixture
    def four_kb(self):
        return KnowledgeBase(classes={"A"}, individuals={"a", "b", "c", "d"},
                             class_assertions={("a", "A"), ("b", "A")})

    def test_doubling_confidence(self, four_kb):
        learner = Learner(four_kb, {})
        # cf(⊤) = 2/4, cf(A) = 1, p = 2  ⇒  2 · log2(2)
        assert learner.gain(Atomic(name="A"), TOP, {"a", "b"}) == pytest.approx(2.0)

    def test_same_confidence(self, four_kb):
        assert Learner(four_kb, {}).gain(TOP, TOP, {"a", "b"}) == 0.0

    def test_no_positive_mass(self, four_kb):
        assert Learner(four_kb, {}).gain(Atomic(name="A"), TOP, {"c"}) == 0.0

    def test_formula(self, four_kb):
        learner = Learner(four_kb, {})
        expected = 1.0 * (math.log2(0.5) - math.log2(0.25))
        assert learner.gain(Atomic(name="A"), TOP, {"a"}) == pytest.approx(expected)


class TestStageInputs:
    def test_pos_must_be_subset(self, separable_kb):
        with pytest.raises(LearningError):
            stage(separable_kb, {"p1"}, {"n1"}, pos={"p2"})

    def test_sets_must_be_disjoint(self, separable_kb):
        with pytest.raises(LearningError):
            StageInputs(target="T", pos=frozenset({"p1"}), positives=frozenset({"p1"}),
                        negatives=frozenset({"p1"}), unlabelled=frozenset(), theta=0.5, eta=1.0,
                        max_conjuncts=5, max_role_depth=1)


class TestLearnOneAxiom:
    def test_finds_separating_class(self, separable_kb):
        learner = Learner(separable_kb, {})
        assert learner.learn_one_axiom(stage(separable_kb, {"p1", "p2", "p3"}, {"n1", "n2", "n3"})) \
            == Atomic(name="A")

    def test_nothing_to_refine(self):
        kb = KnowledgeBase(individuals={"p", "n"})
        learner = Learner(kb, {})
        assert learner.learn_one_axiom(stage(kb, {"p"}, {"n"}, theta=0.9)) is None

    def test_vacuous_criteria_stop_early(self, separable_kb):
        body = Learner(separable_kb, {}).learn_one_axiom(
            stage(separable_kb, {"p1", "p2", "p3"}, {"n1", "n2", "n3"}, theta=0.0, eta=1.0))
        assert body is not None

    def test_deterministic(self, overcovering_kb):
        inputs = stage(overcovering_kb, {"p1", "p2", "p3"}, {"n1", "n2", "n3"}, theta=0.1)
        assert Learner(overcovering_kb, {}).learn_one_axiom(inputs) == \
            Learner(overcovering_kb, {}).learn_one_axiom(inputs)


class TestPnFoilDl:
    def test_empty_pos(self, separable_kb):
        inputs = stage(separable_kb, {"p1"}, {"n1"}, pos=set())
        assert Learner(separable_kb, {}).pn_foil_dl(inputs) == []

    def test_single_rule_covers_all(self, separable_kb):
        rules = Learner(separable_kb, {}).pn_foil_dl(stage(separable_kb, {"p1", "p2", "p3"}, {"n1", "n2", "n3"}))
        assert len(rules) == 1
        assert rules[0].body == Atomic(name="A")
        assert rules[0].head == "T"
        assert rules[0].degree == pytest.approx(1.0)

    def test_two_rules_for_two_groups(self):
        kb = KnowledgeBase(classes={"A", "B"}, individuals={"p1", "p2", "p3", "p4", "n1", "n2"},
                           class_assertions={("p1", "A"), ("p2", "A"), ("p3", "B"), ("p4", "B")})
        rules = Learner(kb, {}).pn_foil_dl(stage(kb, {"p1", "p2", "p3", "p4"}, {"n1", "n2"}, theta=0.9))
        assert {rule.body for rule in rules} == {Atomic(name="A"), Atomic(name="B")}


class TestPnOwl:
    def test_false_positives_trigger_n_stage(self, overcovering_kb, overcovering_labels):
        hypothesis, _ = learn(overcovering_kb, LearningTask(target="T", labels=overcovering_labels))
        assert [r.body for r in hypothesis.p_rules] == [Atomic(name="A")]
        assert hypothesis.p_rules[0].degree == pytest.approx(0.75)
        assert [r.body for r in hypothesis.n_rules] == [Atomic(name="X")]
        assert hypothesis.n_rules[0].head == "FALSEP_T"

        assert classify(overcovering_kb, hypothesis, "n1") == (0.0, False)
        value, positive = classify(overcovering_kb, hypothesis, "p1")
        assert positive and value == pytest.approx(0.75)

    def test_n_stage_beats_baseline(self, overcovering_kb, overcovering_labels):
        full, _ = learn(overcovering_kb, LearningTask(target="T", labels=overcovering_labels))
        baseline, _ = learn(overcovering_kb, LearningTask(target="T", labels=overcovering_labels, n_stage=False))
        assert not baseline.n_rules
        reasoner = Reasoner(overcovering_kb)
        assert reasoner.coverage(baseline) == {"p1", "p2", "p3", "n1"}
        assert reasoner.coverage(full) == {"p1", "p2", "p3"}

    def test_no_false_positives(self, separable_kb, separable_labels):
        hypothesis, _ = learn(separable_kb, LearningTask(target="T", labels=separable_labels))
        assert len(hypothesis.p_rules) == 1
        assert hypothesis.n_rules == ()

    def test_nothing_learnt(self):
        kb = KnowledgeBase(individuals={"p", "n"})
        task = LearningTask(target="T", labels={"p": Label.POSITIVE, "n": Label.NEGATIVE}, theta_p=0.9)
        hypothesis, _ = learn(kb, task)
        assert hypothesis.is_empty
        assert classify(kb, hypothesis, "p") == (0.0, False)

    def test_no_positives(self, separable_kb):
        with pytest.raises(LearningError):
            learn(separable_kb, LearningTask(target="T", labels={"n1": Label.NEGATIVE}))

    def test_target_must_be_fresh(self, separable_kb, separable_labels):
        with pytest.raises(LearningError):
            learn(separable_kb, LearningTask(target="A", labels=separable_labels))

    def test_numeric_property_is_fuzzified(self):
        individuals = {f"i{k}" for k in range(10)}
        kb = KnowledgeBase(data_properties={"s": "numeric"}, individuals=individuals,
                           data_assertions={(f"i{k}", "s", float(k)) for k in range(10)})
        labels = {f"i{k}": (Label.POSITIVE if k >= 7 else Label.NEGATIVE) for k in range(10)}
        hypothesis, families = learn(kb, LearningTask(target="T", labels=labels, theta_p=0.5))
        assert set(families) == {"s"}
        assert hypothesis.p_rules
        assert "s_high" in str(hypothesis.p_rules[0])
        for k in range(7, 10):
            assert classify(kb, hypothesis, f"i{k}")[1]


def test_emitted_rules_meet_stage_thresholds(random_kb):
    rng = np.random.default_rng(2024)
    checked = 0
    for _ in range(150):
        kb = random_kb(rng)
        labels = {ind: Label(int(rng.integers(-1, 2))) for ind in kb.individual_order}
        if not any(v is Label.POSITIVE for v in labels.values()):
            continue
        task = LearningTask(target="T", labels=labels, theta_p=float(rng.uniform(0.1, 0.9)),
                            eta_p=float(rng.uniform(0.2, 1.0)), theta_n=float(rng.uniform(0.1, 0.9)),
                            eta_n=float(rng.uniform(0.2, 1.0)))
        hypothesis, _ = learn(kb, task)
        reasoner = Reasoner(kb)
        positives = task.positives
        for rule in hypothesis.p_rules:
            assert reasoner.confidence(rule.body, positives) >= task.theta_p
            assert reasoner.support(rule.body, kb.individuals - positives) <= task.eta_p
            checked += 1
        if hypothesis.n_rules:
            false_positives = reasoner.coverage(hypothesis.p_rules, theta=task.theta_p) - positives
            for rule in hypothesis.n_rules:
                assert reasoner.confidence(rule.body, false_positives) >= task.theta_n
                assert reasoner.support(rule.body, kb.individuals - false_positives) <= task.eta_n
    assert checked > 0
