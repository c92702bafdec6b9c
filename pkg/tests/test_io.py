import pytest

from core.errors import FormatError, KnowledgeBaseError
from core.model.concept import TOP, Atomic, SomeData, SomeObject, make_and, render
from core.model.fuzzy import FuzzyDatatype, LogicFamily
from core.model.hypothesis import Hypothesis, WeightedRule
from core.model.metrics import FoldMetrics, MetricsReport
from core.model.task import Label
from core.service.fuzzification_service import centroids_to_family, uniform_partition
from infrastructure.config.config import RunConfig, load_run_config
from infrastructure.io.csv_converter import csv_to_kb
from infrastructure.io.fuzzyowl_exporter import export_fuzzyowl, parse_fuzzyowl
from infrastructure.io.hypothesis_store import load_hypothesis, save_hypothesis
from infrastructure.io.kb_loader import dump_kb, parse_examples, parse_kb
from infrastructure.io.report_writer import report_tsv

KB_TEXT = """\
# классы
class A
class B
subclass B A
objprop r
dataprop s numeric
dataprop f boolean
individual a
individual b
instance a B
rel a r b
val b s 70
val a f true
"""


class TestKbLoader:
    def test_parse(self):
        kb = parse_kb(KB_TEXT)
        assert kb.classes == {"A", "B"}
        assert kb.subclass_axioms == {("B", "A")}
        assert ("b", "s", 70.0) in kb.data_assertions
        assert ("a", "f", True) in kb.data_assertions

    def test_empty_file(self):
        kb = parse_kb("")
        assert not kb.individuals and not kb.classes

    def test_undeclared_class_names_line(self):
        with pytest.raises(KnowledgeBaseError, match="строка 2"):
            parse_kb("individual a\ninstance a A\n")

    def test_syntax_error(self):
        with pytest.raises(FormatError) as info:
            parse_kb("class A\nclass\n", path="kb.txt")
        assert info.value.line == 2
        assert str(info.value).startswith("kb.txt:2:")

    def test_unknown_directive(self):
        with pytest.raises(FormatError):
            parse_kb("concept A\n")

    def test_bad_literal(self):
        with pytest.raises(FormatError):
            parse_kb("dataprop f boolean\nindividual a\nval a f maybe\n")

    def test_round_trip(self):
        kb = parse_kb(KB_TEXT)
        text = dump_kb(kb)
        assert parse_kb(text) == kb
        assert dump_kb(parse_kb(text)) == text


class TestExamples:
    def test_parse(self):
        labels = parse_examples("a 1\nb -1\nc 0\n")
        assert labels == {"a": Label.POSITIVE, "b": Label.NEGATIVE, "c": Label.UNLABELLED}

    @pytest.mark.parametrize("text", ["a 2\n", "a\n", "a 1\na -1\n"])
    def test_invalid(self, text):
        with pytest.raises(FormatError):
            parse_examples(text)


class TestCsvConverter:
    def test_iris_like(self, tmp_path):
        path = tmp_path / "iris.csv"
        rows = ["sepal_length,sepal_width,species"]
        rows += [f"{5 + k / 10},{3 + k / 20},{'setosa' if k < 4 else 'versicolor'}" for k in range(8)]
        path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        dataset = csv_to_kb(str(path), "species", positive_values=["versicolor"])
        assert set(dataset.kb.numeric_properties) == {"sepal_length", "sepal_width"}
        assert len(dataset.kb.individuals) == 8
        labels = dataset.examples["versicolor"]
        assert sum(1 for v in labels.values() if v is Label.POSITIVE) == 4
        assert labels["row1"] is Label.NEGATIVE

    def test_categorical_and_boolean(self, tmp_path):
        path = tmp_path / "people.csv"
        path.write_text("name,colour,smoker,target\nann,red,true,yes\nbob,blue,false,no\n", encoding="utf-8")
        dataset = csv_to_kb(str(path), "target", positive_values=["yes"], id_column="name",
                            categorical=["colour"], boolean=["smoker"])
        assert dataset.kb.classes == {"colour_red", "colour_blue"}
        assert ("ann", "colour_red") in dataset.kb.class_assertions
        assert ("bob", "smoker", False) in dataset.kb.data_assertions
        assert dataset.examples["yes"] == {"ann": Label.POSITIVE, "bob": Label.NEGATIVE}

    def test_single_row(self, tmp_path):
        path = tmp_path / "one.csv"
        path.write_text("x,y,t\n1.5,2,a\n", encoding="utf-8")
        dataset = csv_to_kb(str(path), "t", positive_values=["a"])
        assert dataset.kb.data_assertions == {("row1", "x", 1.5), ("row1", "y", 2.0)}

    def test_threshold_target(self, tmp_path):
        path = tmp_path / "wine.csv"
        path.write_text("alcohol,quality\n9.0,5\n12.0,7\n11.0,6\n", encoding="utf-8")
        dataset = csv_to_kb(str(path), "quality", positive_min=7, target_name="GoodWine")
        assert dataset.examples["GoodWine"] == {"row1": Label.NEGATIVE, "row2": Label.POSITIVE,
                                                "row3": Label.NEGATIVE}

    def test_unparseable_cell(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,t\n1.0,a\noops,b\n", encoding="utf-8")
        with pytest.raises(FormatError) as info:
            csv_to_kb(str(path), "t", positive_values=["a"], numeric=["x"])
        assert info.value.line == 3
        assert "x" in str(info.value)

    @pytest.mark.parametrize("cell", ["nan", "inf", "-inf"])
    def test_non_finite_cell(self, tmp_path, cell):
        path = tmp_path / "bad.csv"
        path.write_text(f"x,t\n1.0,a\n2.0,b\n{cell},a\n", encoding="utf-8")
        with pytest.raises(FormatError) as info:
            csv_to_kb(str(path), "t", positive_values=["a"], numeric=["x"])
        assert info.value.line == 4
        assert "x" in str(info.value)

    def test_colliding_column_names(self, tmp_path):
        path = tmp_path / "twins.csv"
        path.write_text("a b,a_b,t\n1,2,yes\n", encoding="utf-8")
        with pytest.raises(FormatError, match="a_b"):
            csv_to_kb(str(path), "t", positive_values=["yes"])


@pytest.fixture
def birads_family():
    return centroids_to_family([1.8, 2.78, 3.997, 5.022, 5.6], (1.0, 6.0), "hasBiRads")


@pytest.fixture
def learnt_hypothesis(birads_family):
    medium = birads_family.sets[2]
    body = make_and([SomeData(prop="hasBiRads", datatype=medium), Atomic(name="Oval")])
    n_body = SomeObject(role="hasShape", filler=Atomic(name="Irregular"))
    return Hypothesis(
        target="ToLearn",
        p_rules=(WeightedRule(body=body, head="ToLearn", degree=0.965068),
                 WeightedRule(body=SomeData(prop="flag", datatype=FuzzyDatatype.equals_bool(True)),
                              head="ToLearn", degree=0.5)),
        n_rules=(WeightedRule(body=n_body, head="FALSEP_ToLearn", degree=0.75),),
        implication=LogicFamily.LUKASIEWICZ,
    )


class TestFuzzyOwlExport:
    def test_golden_define_line(self):
        family = centroids_to_family([2.78, 3.997, 5.022], (1.0, 6.0), "hasBiRads")
        text = export_fuzzyowl(Hypothesis(target="ToLearn"), [family])
        assert "(define-fuzzy-concept hasBiRads_medium triangular(1,6,2.780,3.997,5.022))" in text.splitlines()

    def test_implies_line(self, learnt_hypothesis, birads_family):
        lines = export_fuzzyowl(learnt_hypothesis, [birads_family]).splitlines()
        assert "(implies (and (some hasBiRads hasBiRads_medium) Oval) ToLearn 0.965068)" in lines
        implies = [line for line in lines if line.startswith("(implies")]
        assert implies[-1].endswith("FALSEP_ToLearn 0.750000)")

    def test_empty_hypothesis_is_header_only(self):
        lines = export_fuzzyowl(Hypothesis(target="T")).splitlines()
        assert lines and all(line.startswith("%") for line in lines)

    def test_parse_round_trip(self, learnt_hypothesis, birads_family):
        parsed = parse_fuzzyowl(export_fuzzyowl(learnt_hypothesis, [birads_family]))
        assert parsed.target == "ToLearn"
        assert [render(r.body) for r in parsed.p_rules] == [render(r.body) for r in learnt_hypothesis.p_rules]
        assert [r.degree for r in parsed.n_rules] == [0.75]
        assert parsed.n_rules[0].body == learnt_hypothesis.n_rules[0].body
        datatype = parsed.p_rules[0].body.conjuncts[0].datatype
        assert datatype.params == (2.78, 3.997, 5.022)
        assert datatype.range == (1.0, 6.0)

    def test_rounded_range_still_parses(self):
        family = uniform_partition([1.2344, 5.0], 3, prop="x")
        rule = WeightedRule(body=SomeData(prop="x", datatype=family.sets[0]), head="T", degree=0.5)
        text = export_fuzzyowl(Hypothesis(target="T", p_rules=(rule,)), [family])
        assert "(define-fuzzy-concept x_low left-shoulder(1.234,5,1.234,3.117))" in text.splitlines()
        datatype = parse_fuzzyowl(text).p_rules[0].body.datatype
        assert datatype.range == (1.234, 5.0)
        assert datatype.params == (1.234, 3.117)

    def test_parse_empty(self):
        assert parse_fuzzyowl(export_fuzzyowl(Hypothesis(target="T"))).is_empty

    def test_parse_errors(self):
        with pytest.raises(FormatError):
            parse_fuzzyowl("(implies A T 0.5\n")
        with pytest.raises(FormatError):
            parse_fuzzyowl("(unknown-form A)\n")


class TestHypothesisStore:
    def test_round_trip(self, tmp_path, learnt_hypothesis, birads_family):
        path = tmp_path / "h.json"
        save_hypothesis(str(path), learnt_hypothesis, [birads_family])
        stored = load_hypothesis(str(path))
        assert stored.hypothesis == learnt_hypothesis
        assert stored.families == (birads_family,)

    def test_corrupt_file(self, tmp_path):
        path = tmp_path / "h.json"
        path.write_text('{"hypothesis": {"target": 5}}', encoding="utf-8")
        with pytest.raises(FormatError):
            load_hypothesis(str(path))


class TestRunConfig:
    def test_defaults(self):
        config = RunConfig()
        assert (config.theta_p, config.theta_n, config.eta_p, config.eta_n) == (0.1, 0.3, 1.0, 0.2)
        assert (config.max_conjuncts_p, config.max_conjuncts_n) == (5, 10)
        assert config.folds == 5 and config.seed == 42
        assert config.record_timings is False

    def test_file_and_override(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("theta_p=0.4\nFUZZIFICATION=cmeans\nfuzzy_sets=5\nn_stage=false\n", encoding="utf-8")
        config = load_run_config(str(path), seed=7)
        assert config.theta_p == 0.4
        assert config.fuzzification.value == "cmeans"
        assert config.fuzzy_sets == 5
        assert config.n_stage is False
        assert config.seed == 7

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("theta=0.4\n", encoding="utf-8")
        with pytest.raises(ValueError):
            load_run_config(str(path))

    def test_invalid_fuzzy_sets(self):
        with pytest.raises(ValueError):
            RunConfig(fuzzy_sets=4)

    def test_task_for(self):
        task = RunConfig(theta_n=0.5).task_for("T", {"a": Label.POSITIVE})
        assert task.theta_n == 0.5 and task.target == "T"


def test_report_tsv_format():
    report = MetricsReport(folds=(FoldMetrics.from_counts("T", 1, tp=1, fp=1, positives=2, seconds=1.23456),))
    assert report_tsv(report) == (
        "target\tfold\ttp\tfp\tprecision\trecall\tf1\tseconds\n"
        "T\t1\t1\t1\t0.500000\t0.500000\t0.500000\t1.235\n"
    )


def test_top_renders_in_export():
    h = Hypothesis(target="T", p_rules=(WeightedRule(body=TOP, head="T", degree=0.5),))
    assert "(implies *top* T 0.500000)" in export_fuzzyowl(h)
    assert parse_fuzzyowl(export_fuzzyowl(h)).p_rules[0].body == TOP
