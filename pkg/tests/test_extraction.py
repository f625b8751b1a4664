import random
import re

from vaminer.blacklist import Blacklist, normalize_surface
from vaminer.corpus import Document, Sentence
from vaminer.extraction import (
    Candidate,
    RunStats,
    candidate_id,
    extract_modifier,
    find_phrases,
    match_candidates,
)

ORACLE = re.compile(r"\bthe\s+([\w.,'-]+\s+){1,5}?of\b")
ORACLE_CI = re.compile(r"\b[tT][hH][eE]\s+([\w.,'-]+\s+){1,5}?of\b")


def spans(text, **kwargs):
    return [(p.phrase_start, p.phrase_end) for p in find_phrases(text, **kwargs)]


def oracle_spans(text, pattern=ORACLE):
    return [m.span() for m in pattern.finditer(text)]


def test_single_phrase_with_inner_text():
    phrases = find_phrases("Maddux is the Picasso of baseball.")
    assert len(phrases) == 1
    assert phrases[0].inner_text == "Picasso"
    assert phrases[0].n_inner_tokens == 1


def test_no_of_no_match():
    assert find_phrases("He read the book.") == []


def test_lazy_and_nonoverlapping():
    phrases = find_phrases("the best friend of the Mozart of chess")
    assert [p.inner_text for p in phrases] == ["best friend", "Mozart"]


def test_word_boundary_blocks_embedded_article():
    phrases = find_phrases("breathe the air of Paris")
    assert spans("breathe the air of Paris") == oracle_spans("breathe the air of Paris")
    assert [p.inner_text for p in phrases] == ["air"]


def test_inner_token_count_capped_at_five():
    assert spans("the a b c d e f of x") == []
    phrases = find_phrases("the a b c d e of x")
    assert phrases[0].n_inner_tokens == 5


def test_uppercase_article_needs_flag():
    text = "The Mozart of chess played."
    assert spans(text) == []
    assert spans(text, article_ignore_case=True) == oracle_spans(text, ORACLE_CI)


def test_token_punctuation_allowed_in_inner():
    for text in (
        "he met the Shaquille O'Neal of physics there",
        "she was the Robert Downey, Jr. of finance then",
        "the Jean-Luc Godard of memes arrived",
    ):
        assert spans(text) == oracle_spans(text), text


def test_curated_tricky_inputs_match_oracle():
    tricky = [
        "",
        "the",
        "the of",
        "the of of",
        "the  of  of",
        "the cat of9 dogs",
        "_the cat of dogs",
        "the cat of_ dogs",
        "the cat ofdog of cat of",
        "the end ofter more of stuff",
        "the x.of y",
        "the x. of y",
        "thethe cat of dog",
        "the the of",
        "the a b c d e f of",
        "the a b c d e of",
        "breathe the air of Paris",
        "the Žižek of cultural theory",
        "the 中文 of words",
        "the café of dreams",
        "the x\xa0of y",
        "the x\tof\ty",
        "the x\nof y",
        "the ... of it",
        "the -'- of it",
        "the best friend of the Mozart of chess of time",
        "of the of the of",
        "the of the of the of",
        "THE CAT OF",
        "the cat OF",
        "a the cat of, the dog of.",
    ]
    for text in tricky:
        assert spans(text) == oracle_spans(text), repr(text)
        got_ci = spans(text, article_ignore_case=True)
        assert got_ci == oracle_spans(text, ORACLE_CI), ("ci", repr(text))


def random_strings(seed, count, max_len=500):
    rng = random.Random(seed)
    alphabet = [
        "the", "The", "THE", "of", "OF", "of.", "ofof", "theof",
        "a", "bc", "word", "x9", "9x", "_", "_x", "x_",
        "O'Neal", "Downey,", "Jr.", "Jean-Luc", "étude", "Žižek", "中文",
        " ", "  ", "\t", "\n", "\xa0", " ",
        ".", ",", "-", "'", "?", "!", "(", ")", '"', ";", ":", "/",
    ]
    for _ in range(count):
        s = ""
        while len(s) < max_len:
            piece = rng.choice(alphabet)
            if rng.random() < 0.25:
                break
            s += piece
        yield s[:max_len]


def test_oracle_equivalence_random_sample():
    for text in random_strings(seed=2024, count=2000):
        assert spans(text) == oracle_spans(text), repr(text)


def test_inner_tokens_have_no_whitespace():
    for text in random_strings(seed=7, count=500):
        for p in find_phrases(text):
            assert 1 <= p.n_inner_tokens <= 5
            for token in p.inner_text.split():
                assert not any(ch.isspace() for ch in token)


def test_extract_modifier_single_token():
    text = "Maddux is the Picasso of baseball."
    assert extract_modifier(text, find_phrases(text)[0]) == "baseball"


def test_extract_modifier_multi_token_with_article():
    text = "he was the Michael Johnson of the tennis field today."
    assert extract_modifier(text, find_phrases(text)[0]) == "the tennis field today"


def test_extract_modifier_nothing_after_of():
    text = "he is the Elvis of."
    assert extract_modifier(text, find_phrases(text)[0]) == ""
    text2 = "he is the Elvis of"
    assert extract_modifier(text2, find_phrases(text2)[0]) == ""


def test_extract_modifier_stops_at_punctuation():
    text = "the Mozart of chess, obviously"
    assert extract_modifier(text, find_phrases(text)[0]) == "chess"
    text = 'the Mozart of "chess club" fame'
    assert extract_modifier(text, find_phrases(text)[0]) == ""
    text = "the Mozart of hip-hop culture!"
    assert extract_modifier(text, find_phrases(text)[0]) == "hip-hop culture"


def test_extract_modifier_token_cap():
    text = "the Mozart of one two three four five six seven eight"
    assert extract_modifier(text, find_phrases(text)[0]) == "one two three four five six"
    assert extract_modifier(text, find_phrases(text)[0], max_tokens=2) == "one two"


def make_sentence(doc_id, index, text):
    return Sentence(doc_id=doc_id, index=index, text=text, start=0, end=len(text))


def test_match_candidates_emits_entities_and_modifiers(people_index, empty_blacklist):
    docs = {
        "a1": Document(doc_id="a1", date="1989-03-12", section="Arts", author="X, Y", body=""),
    }
    sentences = [
        make_sentence("a1", 0, "Burton was the Frank Sinatra of Shakespeare."),
    ]
    stats = RunStats()
    out = list(match_candidates(sentences, people_index, empty_blacklist, docs, stats))
    assert len(out) == 1
    c = out[0]
    assert c.source_surface == "Frank Sinatra"
    assert c.entity_ids == ("Q40912",)
    assert c.entity_labels == ("Frank Sinatra",)
    assert c.modifier == "Shakespeare"
    assert c.year == 1989
    assert c.sentence[c.source_start : c.source_end] == "Frank Sinatra"
    assert c.sentence[c.modifier_start : c.modifier_end] == "Shakespeare"


def test_match_candidates_counts_nonentity_phrase(people_index, empty_blacklist):
    docs = {"a1": Document(doc_id="a1", body="")}
    sentences = [make_sentence("a1", 0, "they drove down the middle of the road")]
    stats = RunStats()
    out = list(match_candidates(sentences, people_index, empty_blacklist, docs, stats))
    assert out == []
    assert stats.n_phrase_matches == 1
    assert stats.n_entity_matched == 0
    assert stats.n_after_blacklist == 0


def test_match_candidates_funnel_fixture(people_index):
    # Three single-sentence docs: one gazetteer hit that survives, one hit
    # that is blacklisted, one phrase with no entity behind it.
    docs = {
        "a1": Document(doc_id="a1", date="1996-05-01", body=""),
        "a2": Document(doc_id="a2", date="1996-05-02", body=""),
        "a3": Document(doc_id="a3", date="1996-05-03", body=""),
    }
    sentences = [
        make_sentence("a1", 0, "Maddux is the Picasso of baseball."),
        make_sentence("a2", 0, "they walked past the Hall of mirrors"),
        make_sentence("a3", 0, "it sat in the middle of the road"),
    ]
    blacklist = Blacklist().add("Hall")
    stats = RunStats()
    stats.n_articles = len(docs)
    out = list(match_candidates(sentences, people_index, blacklist, docs, stats))
    assert stats.n_articles == 3
    assert stats.n_phrase_matches == 3
    assert stats.n_entity_matched == 2
    assert stats.n_after_blacklist == 1
    assert len(out) == 1
    assert out[0].source_surface == "Picasso"


def test_funnel_monotonic_on_random_sentences(people_index):
    rng = random.Random(5)
    words = ["the", "of", "Picasso", "Hall", "middle", "road", "he", "was", "a", "great"]
    docs = {"a1": Document(doc_id="a1", body="")}
    blacklist = Blacklist().add("Hall")
    sentences = [
        make_sentence("a1", i, " ".join(rng.choice(words) for _ in range(rng.randint(0, 14))))
        for i in range(300)
    ]
    stats = RunStats()
    list(match_candidates(sentences, people_index, blacklist, docs, stats))
    assert stats.n_phrase_matches >= stats.n_entity_matched >= stats.n_after_blacklist >= 0


def test_emitted_candidates_resolve_through_lookup(people_index):
    blacklist = Blacklist().add("Hall")
    docs = {"a1": Document(doc_id="a1", body="")}
    sentences = [
        make_sentence("a1", 0, "he was the MJ of accounting."),
        make_sentence("a1", 1, "she was the  Pablo   Picasso  of pastry."),
    ]
    stats = RunStats()
    for c in match_candidates(sentences, people_index, blacklist, docs, stats):
        assert c.source_surface == normalize_surface(c.source_surface)
        assert c.entity_ids
        assert people_index.lookup(c.source_surface, blacklist) == set(c.entity_ids)


def test_candidate_id_stable_and_distinct():
    a = candidate_id("doc1", 3, 10)
    assert a == candidate_id("doc1", 3, 10)
    assert a != candidate_id("doc1", 3, 11)
    assert a != candidate_id("doc2", 3, 10)


def test_candidate_json_roundtrip():
    from conftest import make_candidate

    c = make_candidate()
    assert Candidate.from_json_dict(c.to_json_dict()) == c
