import json
import random

import pytest

from vaminer.blacklist import Blacklist, load_blacklist, normalize_surface, save_blacklist
from vaminer.errors import DataError
from vaminer.gazetteer import (
    DumpStats,
    EntityRecord,
    build_index,
    filter_dump,
    load_index,
    lookup,
    save_index,
)

from conftest import wikidata_line


def test_normalize_collapses_whitespace():
    assert normalize_surface("  Shaquille   O'Neal ") == "Shaquille O'Neal"


def test_normalize_preserves_punctuation_and_case():
    assert normalize_surface("Jean-Luc Godard") == "Jean-Luc Godard"
    assert normalize_surface("Robert Downey, Jr.") == "Robert Downey, Jr."


def test_normalize_empty():
    assert normalize_surface("") == ""
    assert normalize_surface("   ") == ""


def test_filter_dump_projects_matching_entity():
    lines = [wikidata_line("Q41421", "Michael Jordan", aliases=["MJ"], instance_of=["Q5"])]
    records = list(filter_dump(lines))
    assert records == [EntityRecord("Q41421", "Michael Jordan", ("MJ",))]


def test_filter_dump_skips_non_matching_class():
    lines = [wikidata_line("Q99", "Some Category", instance_of=["Q4167836"])]
    assert list(filter_dump(lines)) == []


def test_filter_dump_skips_entities_without_english_label():
    lines = [
        wikidata_line("Q1", None, aliases=["Nick"], instance_of=["Q5"]),
        wikidata_line("Q2", "Etiketto", instance_of=["Q5"], lang="eo"),
    ]
    assert list(filter_dump(lines)) == []


def test_filter_dump_mixed_fixture():
    # 10 entities, 4 humans with English labels, all lines well formed.
    lines = [
        "[",
        wikidata_line("Q1", "Ada Lovelace", instance_of=["Q5"], trailing_comma=True),
        wikidata_line("Q2", "London", instance_of=["Q515"], trailing_comma=True),
        wikidata_line("Q3", "Miles Davis", aliases=["Miles"], instance_of=["Q5"], trailing_comma=True),
        wikidata_line("Q4", "A Category", instance_of=["Q4167836"], trailing_comma=True),
        wikidata_line("Q5x", "Some Painting", instance_of=["Q3305213"], trailing_comma=True),
        wikidata_line("Q6", "Grace Hopper", instance_of=["Q5"], trailing_comma=True),
        wikidata_line("Q7", "A Film", instance_of=["Q11424"], trailing_comma=True),
        wikidata_line("Q8", "Erik Satie", instance_of=["Q5"], trailing_comma=True),
        wikidata_line("Q9", "A Band", instance_of=["Q215380"], trailing_comma=True),
        wikidata_line("Q10", "A River", instance_of=["Q4022"]),
        "]",
    ]
    stats = DumpStats()
    records = list(filter_dump(lines, "Q5", stats))
    assert [r.id for r in records] == ["Q1", "Q3", "Q6", "Q8"]
    assert stats.n_matched == 4
    assert stats.n_skipped_malformed == 0


def test_filter_dump_counts_malformed_lines():
    lines = [
        "{not json",
        wikidata_line("Q1", "Ada Lovelace", instance_of=["Q5"]),
        '"just a string"',
    ]
    stats = DumpStats()
    records = list(filter_dump(lines, "Q5", stats))
    assert len(records) == 1
    assert stats.n_skipped_malformed == 2


def test_filter_dump_unreadable_stream_is_fatal():
    def broken():
        yield wikidata_line("Q1", "Ada Lovelace", instance_of=["Q5"])
        raise OSError("disk gone")

    with pytest.raises(DataError, match="line 2"):
        list(filter_dump(broken()))


def test_build_index_shared_surface_collision():
    records = [
        EntityRecord("Q1", "John Smith"),
        EntityRecord("Q2", "John Smith"),
    ]
    index = build_index(records)
    assert index.ids_for("John Smith") == {"Q1", "Q2"}


def test_build_index_alias_insertion():
    index = build_index([EntityRecord("Q5593", "Pablo Picasso", ("Picasso",))])
    assert index.ids_for("Pablo Picasso") == {"Q5593"}
    assert index.ids_for("Picasso") == {"Q5593"}


def test_build_index_empty_input():
    index = build_index([])
    assert index.n_entities == 0
    assert index.n_unique_names == 0
    assert index.ids_for("anyone") == frozenset()


def test_unique_name_count_matches_brute_force():
    records = [
        EntityRecord("Q1", "Alpha One", ("The Boss", "A. One")),
        EntityRecord("Q2", "Beta Two", ("The Boss",)),
        EntityRecord("Q3", "Gamma Three", ("G3",)),
        EntityRecord("Q4", "Delta Four", ("G3", "Del")),
        EntityRecord("Q5", "Epsilon Five", ()),
    ]
    index = build_index(records)
    brute = set()
    for r in records:
        for name in (r.label, *r.aliases):
            brute.add(normalize_surface(name))
    assert index.n_unique_names == len(brute)
    assert index.n_entities == 5


def test_lookup_blacklist_dominates(people_index):
    blacklist = Blacklist().add("Church")
    assert lookup(people_index, "Church", blacklist) == frozenset()
    # Same surface resolves once the blacklist no longer has it.
    assert lookup(people_index, "Church", Blacklist()) == {"Q1002"}


def test_lookup_hit_and_miss(people_index, empty_blacklist):
    assert lookup(people_index, "Picasso", empty_blacklist) == {"Q5593"}
    assert lookup(people_index, "Nobody Knowsme", empty_blacklist) == frozenset()


def test_lookup_normalizes_surface(people_index, empty_blacklist):
    assert lookup(people_index, "  Pablo   Picasso ", empty_blacklist) == {"Q5593"}


def test_roundtrip_every_name_resolves():
    rng = random.Random(42)
    firsts = ["Ada", "Miles", "Grace", "Erik", "Rosa", "Leo"]
    lasts = ["Lovelace", "Davis", "Hopper", "Satie", "Parks", "Tolstoy"]
    records = []
    for i in range(50):
        label = f"{rng.choice(firsts)} {rng.choice(lasts)}"
        aliases = tuple(
            f"{rng.choice(firsts)}{rng.randint(1, 9)}" for _ in range(rng.randint(0, 3))
        )
        records.append(EntityRecord(f"Q{i}", label, aliases))
    index = build_index(records)
    blacklist = Blacklist()
    for r in records:
        for name in (r.label, *r.aliases):
            assert r.id in lookup(index, name, blacklist)


def test_lookup_is_stable(people_index, empty_blacklist):
    first = lookup(people_index, "MJ", empty_blacklist)
    second = lookup(people_index, "MJ", empty_blacklist)
    assert first == second == {"Q41421"}


def test_index_serialization_roundtrip(tmp_path, people_index):
    path = tmp_path / "names.idx"
    save_index(people_index, path)
    loaded = load_index(path)
    assert loaded.names == people_index.names
    assert loaded.labels == people_index.labels
    assert loaded.n_entities == people_index.n_entities
    assert loaded.n_unique_names == people_index.n_unique_names


def test_index_serialization_deterministic(tmp_path, people_index):
    a = tmp_path / "a.idx"
    b = tmp_path / "b.idx"
    save_index(people_index, a)
    save_index(people_index, b)
    assert a.read_bytes() == b.read_bytes()


def test_index_version_mismatch_refused(tmp_path, people_index):
    path = tmp_path / "names.idx"
    save_index(people_index, path)
    lines = path.read_text(encoding="utf-8").splitlines()
    header = json.loads(lines[0])
    header["version"] = 999
    lines[0] = json.dumps(header)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(DataError, match="version"):
        load_index(path)


def test_blacklist_file_roundtrip(tmp_path):
    path = tmp_path / "blacklist.txt"
    path.write_text("# one-word aliases\nHall\nChurch  \n\n", encoding="utf-8")
    blacklist = load_blacklist(path)
    assert "Hall" in blacklist
    assert "Church" in blacklist
    assert "Picasso" not in blacklist

    updated = blacklist.add("Stone")
    assert updated.version == 1
    save_blacklist(updated, path)
    assert load_blacklist(path).surfaces == updated.surfaces


def test_blacklist_add_is_versioned_and_immutable():
    b0 = Blacklist()
    b1 = b0.add("Hall")
    assert "Hall" not in b0
    assert "Hall" in b1
    assert (b0.version, b1.version) == (0, 1)
    assert b1.add("Hall") is b1
