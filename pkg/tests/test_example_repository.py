"""Benchmark registry."""
import json

import pytest

from src.models import ModelFamily, strip_contains_X
from src.payoffs import PayoffFamily, strip_contains_P
from src.repositories import ExampleEntry, ExampleRepository, entry, registry


@pytest.fixture(scope="module")
def repository() -> ExampleRepository:
    return ExampleRepository()


def test_thirty_six_numbered_examples():
    examples = registry()
    assert [e.number for e in examples] == list(range(1, 37))


@pytest.mark.parametrize(
    "number, reference, stat_error",
    [(1, 11.4474, 8e-4), (22, 0.04634, 5e-5), (34, 4.39e-4, 3e-6)],
)
def test_reference_values(number, reference, stat_error):
    example = entry(number)
    assert example.reference == reference
    assert example.stat_error == stat_error


def test_families_are_grouped(repository):
    for family, numbers in [(ModelFamily.GBM, range(1, 13)), (ModelFamily.VG, range(13, 25)),
                            (ModelFamily.NIG, range(25, 37))]:
        assert [e.number for e in repository.get_by_family(family)] == list(numbers)


@pytest.mark.parametrize("example", [e for e in registry() if e.damping is not None], ids=lambda e: e.name)
def test_tabulated_damping_is_admissible(example):
    assert strip_contains_X(example.model, example.damping).contained
    assert strip_contains_P(example.payoff, example.damping).contained


def test_inadmissible_damping_is_dropped():
    example = entry(16)
    assert example.damping is None
    assert "outside" in example.note


def test_dimensions_agree():
    for example in registry():
        assert example.model.d == example.payoff.d
        assert example.d in (2, 4, 6)


def test_payoff_mix():
    payoffs = [e.payoff.family for e in registry()]
    assert payoffs.count(PayoffFamily.BASKET_PUT) == payoffs.count(PayoffFamily.CALL_ON_MIN) == 18


def test_lookup_by_name(repository):
    assert repository.get_by_name("7") == repository.get_by_number(7)
    assert repository.get_by_name("example-7").number == 7
    assert repository.get_by_name("put-1d-gbm").reference == pytest.approx(15.8519, abs=1e-4)


@pytest.mark.parametrize("name", ["37", "example-99", "no-such-example"])
def test_unknown_names(repository, name):
    with pytest.raises(KeyError):
        repository.get_by_name(name)


def test_export(repository, tmp_path):
    path = tmp_path / "registry.json"
    repository.export(path)
    payload = json.loads(path.read_text())
    assert len(payload) == len(repository.get_all())
    first = payload[0]
    assert first["name"] == "example-1"
    assert first["model"]["family"] == "GBM"
    assert first["damping"] == [2.5, 2.5]


def test_export_round_trip(repository, tmp_path):
    path = tmp_path / "registry.json"
    repository.export(path)
    restored = [ExampleEntry.model_validate(item) for item in json.loads(path.read_text())]
    assert restored == repository.get_all()


def test_irreproducible_references_are_flagged():
    flagged = [e.number for e in registry() if not e.reference_reproducible]
    assert flagged == [29, 31]
    assert all(entry(n).note for n in flagged)


@pytest.mark.parametrize("number", [9, 10, 30, 34, 35, 36])
def test_damping_discrepancies_are_noted(number):
    assert "g(0; R)" in entry(number).note
