import random

import pytest

from rackqm.adjoint import (
    FreeRackFactorModel,
    express_generator,
    presentation,
    trivial_rack_model,
    verify_expression,
)
from rackqm.racks import builtin_racks, dihedral_quandle, trivial_rack
from rackqm.words import AbelianWord, GroupWord, parse_word


def test_presentation_relator_count_and_shape():
    for rack in builtin_racks():
        pres = presentation(rack)
        assert len(pres.generators) == rack.size
        assert len(pres.relators) == rack.size**2


def test_presentation_trivial_rack_gives_commutators():
    pres = presentation(trivial_rack(2))
    assert parse_word("e_0 e_1 e_0^-1 e_1^-1") in pres.relators


def test_presentation_one_element_rack_is_trivial_relator():
    pres = presentation(trivial_rack(1))
    assert len(pres.relators) == 1
    assert pres.relators[0].is_identity  # e0 e0 = e0 e0 reduces away


def test_presentation_dihedral_read_off():
    rack = dihedral_quandle(3)
    pres = presentation(rack)
    for i in range(3):
        for j in range(3):
            k = (2 * j - i) % 3
            expected = parse_word(f"e_{i} e_{j} e_{k}^-1 e_{j}^-1")
            assert expected in pres.relators


def test_presentation_export_format():
    text = presentation(trivial_rack(2)).export_text()
    assert text.endswith("\n")
    lines = text.split("\n")[:-1]
    assert lines[0] == "generators: e_0 e_1"
    assert len(lines) == 1 + 4  # one line per relator; trivial relators are empty
    assert "e_0 e_1 e_0^-1 e_1^-1" in lines


def test_trivial_model_rank_one_is_infinite_cyclic():
    model = trivial_rack_model(1, factor="a")
    assert model.embed(0) == AbelianWord((("a.0", 1),))
    assert model.act(0, model.embed(0) ** 5) == 0
    assert model.tag == "free-abelian"


def test_trivial_model_collection():
    model = trivial_rack_model(2, factor="t")
    e0, e1 = model.embed(0), model.embed(1)
    assert model.multiply(e0**2, e1 * e0).render() == "t.0^3 t.1"


def test_free_rack_factor_model_shifts():
    model = FreeRackFactorModel("a", "a.0")
    assert model.act(0, model.embed(0)) == 1
    assert model.act(2, model.embed(7) ** -3) == -1
    assert model.tag == "free-group"
    assert not model.is_quandle


def test_model_action_is_a_group_action():
    rng = random.Random(0)
    for model in (trivial_rack_model(3, factor="t"), FreeRackFactorModel("a", "a.0")):
        for _ in range(200):
            key = model.sample_key(rng, 4)
            g = model.sample_value(rng, 4)
            h = model.sample_value(rng, 4)
            assert model.act(model.act(key, g), h) == model.act(key, model.multiply(g, h))
            assert model.act(key, model.identity()) == key


def test_model_embedding_satisfies_adjoint_relation():
    # e(x) e(y) = e(y) e(x <| y); trivial rack means x <| y = x, values commute
    model = trivial_rack_model(3, factor="t")
    for x in range(3):
        for y in range(3):
            lhs = model.multiply(model.embed(x), model.embed(y))
            rhs = model.multiply(model.embed(y), model.embed(x))
            assert lhs == rhs


def test_express_generator_in_generating_set():
    rack = dihedral_quandle(3)
    word = express_generator(rack, {0, 1}, 0)
    assert word == parse_word("e_0")


def test_express_generator_dihedral_conjugate():
    rack = dihedral_quandle(3)  # 2 = 0 <| 1 since (2*1 - 0) % 3 = 2
    word = express_generator(rack, {0, 1}, 2)
    assert word == parse_word("e_1^-1 e_0 e_1")


def test_express_generator_trivial_rack_full_set():
    rack = trivial_rack(3)
    for x in range(3):
        assert express_generator(rack, {0, 1, 2}, x) == GroupWord(((f"e_{x}", 1),))


def test_express_generator_requires_generating_set():
    with pytest.raises(ValueError):
        express_generator(trivial_rack(3), {0}, 2)


def test_verify_expression_on_express_output():
    for rack in builtin_racks():
        gens = set(range(rack.size))
        for x in range(rack.size):
            word = express_generator(rack, gens, x)
            assert verify_expression(rack, gens, x, word)


def test_verify_expression_dihedral_witnesses():
    rack = dihedral_quandle(3)
    gens = {0, 1}
    for x in range(3):
        word = express_generator(rack, gens, x)
        assert verify_expression(rack, gens, x, word)


def test_verify_expression_rejects_wrong_power():
    rack = dihedral_quandle(3)
    assert verify_expression(rack, {0, 1, 2}, 0, parse_word("e_0"))
    assert not verify_expression(rack, {0, 1, 2}, 0, parse_word("e_0^2"))
