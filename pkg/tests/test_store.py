import json
import random

import pytest

from referat.docmodel import parse_docjson
from referat.errors import InvariantViolation, IoFailure, SchemaMismatch
from referat.recognizer import recognize
from referat.store import (
    DocumentAnalysis,
    KeywordRow,
    SentenceRecord,
    WordSentenceLink,
    build_analysis,
    load_analysis,
    save_analysis,
)
from referat.weighting import derive_keywords

from helpers import block, docjson_bytes


def _analysis_from(main_text, lang="en"):
    blocks = [
        block("Sample Title", align="center", bold=True),
        block("© Author One"),
        block("© Author Two", align="center"),
        block(main_text),
        block("Filler paragraph goes here.", bold=True),
        block("1. Source.", italic=True),
        block("2. Source."),
    ]
    doc = recognize(parse_docjson(docjson_bytes(lang, blocks)))
    records = derive_keywords(doc, count=3)
    return doc, records, build_analysis(doc, records)


def random_analysis(rng: random.Random) -> DocumentAnalysis:
    n_sentences = rng.randint(1, 6)
    sentences = []
    for sid in range(n_sentences):
        ww = round(rng.uniform(0, 3), 6)
        fmt = float(rng.randint(0, 1))
        place = rng.choice([1.0, 1 / 3, 1 / 9])
        sentences.append(
            SentenceRecord(SentenceID=sid, WordsWeight=ww, Format=fmt, Place=place, Sum=ww + fmt + place)
        )
    keywords = []
    links = []
    link_id = 0
    for wid in range(rng.randint(0, 4)):
        freq = round(rng.random(), 6)
        place = round(rng.random(), 6)
        fmt = float(rng.randint(0, 1))
        user = round(rng.random(), 6)
        hits = rng.sample(range(n_sentences), rng.randint(0, n_sentences))
        keywords.append(
            KeywordRow(
                WordID=wid,
                Word=f"word{wid}",
                Frequency=freq,
                Place=place,
                Format=fmt,
                UserWeight=user,
                Sum=freq + place + fmt + user,
                SentenceID=min(hits) if hits else None,
            )
        )
        for sid in sorted(hits):
            links.append(WordSentenceLink(ID=link_id, WordID=wid, SentenceID=sid))
            link_id += 1
    return DocumentAnalysis(sentences=sentences, keywords=keywords, links=links)


class TestBuildAnalysis:
    def test_empty_document_analysis_serializes(self, tmp_path):
        path = tmp_path / "trace.json"
        save_analysis(DocumentAnalysis(), path)
        payload = json.loads(path.read_text())
        assert payload == {"sentences": [], "keywords": [], "links": []}

    def test_shared_keyword_produces_two_links(self):
        _, records, analysis = _analysis_from(
            "The signal arrives quickly. The signal fades slowly."
        )
        assert any(rec.word == "signal" for rec in records)
        signal_id = next(rec.word_id for rec in records if rec.word == "signal")
        pairs = [(l.WordID, l.SentenceID) for l in analysis.links if l.WordID == signal_id]
        assert pairs == [(signal_id, 0), (signal_id, 1)]

    def test_sentence_sum_components(self):
        _, _, analysis = _analysis_from("Alpha beta gamma. Delta epsilon zeta.")
        for row in analysis.sentences:
            assert row.Sum == row.WordsWeight + row.Format + row.Place

    def test_styled_paragraph_sets_format(self):
        _, _, analysis = _analysis_from("Alpha beta gamma.")
        by_id = {row.SentenceID: row for row in analysis.sentences}
        # the bold filler paragraph contributes the styled sentence
        assert any(row.Format == 1.0 for row in by_id.values())
        assert any(row.Format == 0.0 for row in by_id.values())


class TestRoundTrip:
    def test_real_analysis_round_trips(self, tmp_path):
        _, _, analysis = _analysis_from("Signals carry data. Noise hides signals.")
        path = tmp_path / "trace.json"
        save_analysis(analysis, path)
        assert load_analysis(path) == analysis

    def test_random_analyses_round_trip(self, tmp_path):
        rng = random.Random(5)
        for i in range(25):
            analysis = random_analysis(rng)
            path = tmp_path / f"trace{i}.json"
            save_analysis(analysis, path)
            assert load_analysis(path) == analysis

    def test_extra_top_level_keys_tolerated(self, tmp_path):
        _, _, analysis = _analysis_from("Alpha beta.")
        path = tmp_path / "trace.json"
        save_analysis(analysis, path)
        payload = json.loads(path.read_text())
        payload["ranking"] = [{"SentenceID": 0}]
        path.write_text(json.dumps(payload))
        assert load_analysis(path) == analysis


class TestValidation:
    def test_corrupted_sentence_sum_detected(self, tmp_path):
        _, _, analysis = _analysis_from("Alpha beta gamma.")
        path = tmp_path / "trace.json"
        save_analysis(analysis, path)
        payload = json.loads(path.read_text())
        payload["sentences"][0]["Sum"] += 0.25
        path.write_text(json.dumps(payload))
        with pytest.raises(InvariantViolation):
            load_analysis(path)

    def test_corrupted_keyword_sum_detected(self, tmp_path):
        _, _, analysis = _analysis_from("Alpha beta gamma alpha.")
        path = tmp_path / "trace.json"
        save_analysis(analysis, path)
        payload = json.loads(path.read_text())
        payload["keywords"][0]["Sum"] += 1.0
        path.write_text(json.dumps(payload))
        with pytest.raises(InvariantViolation):
            load_analysis(path)

    def test_save_refuses_stale_sum(self, tmp_path):
        analysis = DocumentAnalysis(
            sentences=[SentenceRecord(SentenceID=0, WordsWeight=1.0, Format=0.0, Place=1.0, Sum=9.0)]
        )
        with pytest.raises(InvariantViolation):
            save_analysis(analysis, tmp_path / "x.json")

    def test_missing_field_is_schema_mismatch(self, tmp_path):
        _, _, analysis = _analysis_from("Alpha beta.")
        path = tmp_path / "trace.json"
        save_analysis(analysis, path)
        payload = json.loads(path.read_text())
        del payload["sentences"][0]["Place"]
        path.write_text(json.dumps(payload))
        with pytest.raises(SchemaMismatch):
            load_analysis(path)

    def test_unknown_record_field_is_schema_mismatch(self, tmp_path):
        _, _, analysis = _analysis_from("Alpha beta.")
        path = tmp_path / "trace.json"
        save_analysis(analysis, path)
        payload = json.loads(path.read_text())
        payload["sentences"][0]["Color"] = "red"
        path.write_text(json.dumps(payload))
        with pytest.raises(SchemaMismatch):
            load_analysis(path)

    def test_dangling_link_detected(self, tmp_path):
        analysis = DocumentAnalysis(
            sentences=[SentenceRecord(SentenceID=0, WordsWeight=0.0, Format=0.0, Place=1.0, Sum=1.0)],
            keywords=[],
            links=[WordSentenceLink(ID=0, WordID=4, SentenceID=0)],
        )
        with pytest.raises(InvariantViolation):
            save_analysis(analysis, tmp_path / "x.json")

    def test_duplicate_link_pair_detected(self, tmp_path):
        analysis = DocumentAnalysis(
            sentences=[SentenceRecord(SentenceID=0, WordsWeight=0.0, Format=0.0, Place=1.0, Sum=1.0)],
            keywords=[
                KeywordRow(
                    WordID=0, Word="w", Frequency=0.0, Place=0.0, Format=0.0,
                    UserWeight=0.0, Sum=0.0, SentenceID=0,
                )
            ],
            links=[
                WordSentenceLink(ID=0, WordID=0, SentenceID=0),
                WordSentenceLink(ID=1, WordID=0, SentenceID=0),
            ],
        )
        with pytest.raises(InvariantViolation):
            save_analysis(analysis, tmp_path / "x.json")

    def test_not_json_is_schema_mismatch(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{ nope")
        with pytest.raises(SchemaMismatch):
            load_analysis(path)

    def test_missing_file_is_io_failure(self, tmp_path):
        with pytest.raises(IoFailure):
            load_analysis(tmp_path / "absent.json")

    def test_unwritable_path_is_io_failure(self, tmp_path):
        with pytest.raises(IoFailure):
            save_analysis(DocumentAnalysis(), tmp_path / "missing" / "x.json")
