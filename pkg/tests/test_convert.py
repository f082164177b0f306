"""
Schema Conversion Test Suite
Flat <-> hierarchical conversion driven by language profiles.
"""
import random

import pytest

from unimorph_kit.errors import ResourceError
from unimorph_kit.schema import (
    NOT_REPRESENTABLE,
    AmbiguousConversion,
    NoCaseContext,
    SchemaKind,
    bundles_equal,
    canonicalize,
    flat_to_hierarchical,
    hierarchical_to_flat,
    load_profile,
    parse_features,
    serialize,
)

# (profile, flat, hierarchical)
EXAMPLE_FORMS = [
    ("eng", "V;PRS;3;SG", "V;PRS;NOM(3,SG)"),
    ("kat", "V;FUT;ARGNO1P;ARGAC2S", "V;FUT;NOM(1,PL);ACC(2,SG)"),
    ("heb", "N;SG;PSSD;PSS3SF", "N;SG;PSSD;PSS(3,SG,FEM)"),
    ("rus", "N;DAT;PL", "N;DAT(PL)"),
    ("tur", "N;ACC;SG;PSSD;PSS1S", "N;ACC(SG;PSSD;PSS(1,SG))"),
]


@pytest.mark.parametrize("language, flat, hierarchical", EXAMPLE_FORMS)
def test_flat_to_hierarchical_examples(profiles, language, flat, hierarchical):
    result = flat_to_hierarchical(parse_features(flat), profiles[language])
    assert serialize(result) == hierarchical


@pytest.mark.parametrize("language, flat, hierarchical", EXAMPLE_FORMS)
def test_hierarchical_to_flat_examples(profiles, language, flat, hierarchical):
    result = hierarchical_to_flat(parse_features(hierarchical), profiles[language])
    assert serialize(result) == flat


def test_turkish_flat_order_is_not_significant(profiles):
    published = parse_features("N;SG;ACC;PSSD;PSS1S")
    result = hierarchical_to_flat(parse_features("N;ACC(SG;PSSD;PSS(1,SG))"), profiles["tur"])
    assert bundles_equal(result, published)


def test_stacked_cases_are_not_flat_representable(profiles):
    result = hierarchical_to_flat(parse_features("N;ALL(COM(SG))"), profiles["evn"])
    assert result is NOT_REPRESENTABLE
    assert not result
    assert repr(result) == "NOT_REPRESENTABLE"


def test_two_top_level_cases_on_a_nominal_are_not_representable(profiles):
    result = hierarchical_to_flat(parse_features("N;DAT(PL);GEN(SG)"), profiles["rus"])
    assert result is NOT_REPRESENTABLE


def test_unmapped_argument_is_not_representable(profiles):
    result = hierarchical_to_flat(parse_features("V;NOM(1,SG);ACC(3,PL,FEM)"), profiles["kat"])
    assert result is NOT_REPRESENTABLE


def test_lone_subject_unwraps_to_bare_agreement(profiles):
    result = hierarchical_to_flat(parse_features("V;PST;NOM(3,SG,FEM)"), profiles["rus"])
    assert serialize(result) == "V;PST;3;SG;FEM"


def test_lone_subject_composite_normalizes_to_bare_agreement(profiles):
    hierarchical = flat_to_hierarchical(parse_features("V;ARGNO1P"), profiles["kat"])
    assert serialize(hierarchical) == "V;NOM(1,PL)"
    assert serialize(hierarchical_to_flat(hierarchical, profiles["kat"])) == "V;1;PL"


def test_lone_subject_composite_breaks_the_round_trip(profiles):
    flat = canonicalize(parse_features("V;PRS;ARGNO3S"))
    hierarchical = flat_to_hierarchical(flat, profiles["kat"])
    back = hierarchical_to_flat(hierarchical, profiles["kat"])
    assert serialize(hierarchical) == "V;PRS;NOM(3,SG)"
    assert serialize(back) == "V;PRS;3;SG"
    assert not bundles_equal(back, flat)


def test_already_converted_input_is_canonicalized(profiles):
    assert serialize(flat_to_hierarchical(parse_features("V;NOM(SG,3);PRS"), profiles["eng"])) == "V;PRS;NOM(3,SG)"
    assert serialize(hierarchical_to_flat(parse_features("PL;DAT;N"), profiles["rus"])) == "N;DAT;PL"


@pytest.mark.parametrize("text", ["V;1;2;SG", "V;1;SG;PL", "V;3;SG;ARGNO1P", "N;NOM;DAT;PL"])
def test_ambiguous_flat_bundles(profiles, text):
    with pytest.raises(AmbiguousConversion):
        flat_to_hierarchical(parse_features(text), profiles["kat"])


def test_nominal_without_case_in_a_case_wrapping_language(profiles):
    with pytest.raises(NoCaseContext):
        flat_to_hierarchical(parse_features("N;PL;PSS1S"), profiles["tur"])


def test_nominal_without_case_elsewhere_is_left_alone(profiles):
    assert serialize(flat_to_hierarchical(parse_features("N;PL"), profiles["rus"])) == "N;PL"


def _canonical_flat(rng: random.Random) -> tuple[str, str]:
    """
    A random bundle in canonical flat convention, with the profile to use.

    A subject composite standing alone (V;PRS;ARGNO3S) is never drawn: it comes
    back as bare agreement, so the round trip does not hold for it.
    """
    if rng.random() < 0.5:
        tags = ["V", rng.choice(["PRS", "PST", "FUT"])]
        if rng.random() < 0.5:
            tags += rng.sample(["1", "2", "3"], 1) + rng.sample(["SG", "PL", "DU"], rng.randint(0, 1))
            tags += rng.sample(["FEM", "MASC"], rng.randint(0, 1))
        else:
            roles = rng.sample(["NO", "AC", "DA", "BE"], rng.randint(1, 3))
            # lone subject composite normalizes to bare agreement
            if roles == ["NO"]:
                roles.append("AC")
            tags += [f"ARG{r}{rng.choice('123')}{rng.choice('SPD')}" for r in roles]
        return ";".join(tags), "kat"
    language = rng.choice(["rus", "heb", "tur"])
    tags = ["N"]
    case = rng.choice(["NOM", "ACC", "DAT", "GEN", "INS", None])
    if case:
        tags.append(case)
    tags += rng.sample(["SG", "PL"], rng.randint(0, 1))
    if language == "tur" and not case:
        tags.append("ACC")
    if rng.random() < 0.5:
        tags += ["PSSD", rng.choice(["PSS1S", "PSS2P", "PSS3SF", "PSSRS"])]
    return ";".join(tags), language


def test_round_trip_over_canonical_flat_bundles(profiles):
    rng = random.Random(7)
    for _ in range(2000):
        text, language = _canonical_flat(rng)
        profile = profiles[language]
        flat = canonicalize(parse_features(text))
        hierarchical = flat_to_hierarchical(flat, profile)
        back = hierarchical_to_flat(hierarchical, profile)
        assert back is not NOT_REPRESENTABLE, text
        assert back.schema_kind == SchemaKind.FLAT
        assert bundles_equal(back, flat), (text, serialize(hierarchical), serialize(back))


def test_profile_inherits_base_map(profiles):
    assert profiles["tur"].case_wraps_nominal
    assert profiles["tur"].language == "tur"
    assert profiles["eng"].expand(parse_features("ARGAC1S").nodes[0].head) is not None


def test_profile_rejects_non_injective_map(write_file):
    path = write_file("dup.tsv", "language\txx\nARGNO1S\tNOM(1,SG)\nNO1\tNOM(1,SG)\n")
    with pytest.raises(ResourceError):
        load_profile(path)


def test_profile_rejects_atomic_composite_value(write_file):
    path = write_file("bad.tsv", "ARGNO1S\tNOM\n")
    with pytest.raises(ResourceError):
        load_profile(path)


def test_missing_profile_is_a_resource_error():
    with pytest.raises(ResourceError):
        load_profile("no-such-language")
