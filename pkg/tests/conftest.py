import json

import pytest

from vaminer.blacklist import Blacklist
from vaminer.extraction import Candidate, candidate_id
from vaminer.gazetteer import EntityRecord, build_index


def wikidata_line(entity_id, label=None, aliases=(), instance_of=(), lang="en", trailing_comma=False):
    """One dump line in the knowledge-base export shape."""
    obj = {
        "id": entity_id,
        "type": "item",
        "labels": {},
        "aliases": {},
        "claims": {
            "P31": [
                {"mainsnak": {"datavalue": {"value": {"id": cls}}}}
                for cls in instance_of
            ]
        },
    }
    if label is not None:
        obj["labels"][lang] = {"language": lang, "value": label}
    if aliases:
        obj["aliases"][lang] = [{"language": lang, "value": a} for a in aliases]
    line = json.dumps(obj)
    return line + "," if trailing_comma else line


@pytest.fixture
def people_index():
    records = [
        EntityRecord("Q5593", "Pablo Picasso", ("Picasso",)),
        EntityRecord("Q40912", "Frank Sinatra", ()),
        EntityRecord("Q303", "Elvis Presley", ("Elvis",)),
        EntityRecord("Q41421", "Michael Jordan", ("MJ",)),
        EntityRecord("Q213812", "Babe Ruth", ()),
        EntityRecord("Q1001", "Arsenio Hall", ("Hall",)),
        EntityRecord("Q1002", "Charlotte Church", ("Church",)),
    ]
    return build_index(records)


def make_candidate(
    candidate_id_="",
    doc_id="doc1",
    date="1996-07-30",
    year=1996,
    section="Sports",
    author="Vecsey, George",
    sentence="Maddux is the Picasso of baseball.",
    sentence_index=0,
    source_surface="Picasso",
    source_start=14,
    source_end=21,
    entity_ids=("Q5593",),
    entity_labels=("Pablo Picasso",),
    modifier="baseball",
    modifier_start=25,
    modifier_end=33,
    phrase_start=10,
):
    return Candidate(
        candidate_id=candidate_id_ or candidate_id(doc_id, sentence_index, phrase_start),
        doc_id=doc_id,
        date=date,
        year=year,
        section=section,
        author=author,
        sentence=sentence,
        sentence_index=sentence_index,
        source_surface=source_surface,
        source_start=source_start,
        source_end=source_end,
        entity_ids=tuple(entity_ids),
        entity_labels=tuple(entity_labels),
        modifier=modifier,
        modifier_start=modifier_start,
        modifier_end=modifier_end,
    )


@pytest.fixture
def empty_blacklist():
    return Blacklist()
