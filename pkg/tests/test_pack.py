from __future__ import annotations

import json
from pathlib import Path

import pytest

from packgen import random_pack, random_pack_dict, write_pack
from signbridge.errors import ManifestSchemaError, ManifestSyntaxError, ValidationFailed
from signbridge.pack import (
    ContentStore,
    build_snapshot,
    export_pack,
    load_pack_dir,
    manifest_to_canonical_dict,
    parse_manifest,
    validate_pack,
)


def minimal_manifest_dict(**overrides) -> dict:
    base = {
        "pack_name": "t",
        "version": "1",
        "entries": [],
        "links": [],
        "glyphs": [],
        "exercises": [],
        "media": {},
        "locales": {},
    }
    base.update(overrides)
    return base


def parse_dict(d: dict):
    return parse_manifest(json.dumps(d, ensure_ascii=False).encode("utf-8"))


class TestParseManifest:
    def test_sample_pack_parses_clean(self, sample_pack_dir):
        manifest, media_root = load_pack_dir(sample_pack_dir)
        report = validate_pack(manifest, media_root)
        assert report.ok
        assert manifest.pack_name == "signbridge-sample"

    def test_missing_entries_field(self):
        d = minimal_manifest_dict()
        del d["entries"]
        with pytest.raises(ManifestSchemaError) as excinfo:
            parse_dict(d)
        assert excinfo.value.field_path == "entries"

    def test_truncated_file_reports_position(self):
        with pytest.raises(ManifestSyntaxError) as excinfo:
            parse_manifest(b'{"pack_name": "x", "version"')
        assert "line" in excinfo.value.message
        assert excinfo.value.details["line"] >= 1

    def test_not_utf8(self):
        with pytest.raises(ManifestSyntaxError):
            parse_manifest(b"\xff\xfe{}")

    def test_wrong_type_names_field(self):
        with pytest.raises(ManifestSchemaError) as excinfo:
            parse_dict(minimal_manifest_dict(entries={}))
        assert excinfo.value.field_path == "entries"

    def test_unknown_fields_become_warnings(self):
        manifest = parse_dict(minimal_manifest_dict(surprise=1))
        assert any(w.code == "UnknownField" and w.path == "surprise" for w in manifest.parse_warnings)

    def test_entry_field_paths(self):
        d = minimal_manifest_dict(entries=[{"id": "a", "language": "GSL"}])
        with pytest.raises(ManifestSchemaError) as excinfo:
            parse_dict(d)
        assert excinfo.value.field_path.startswith("entries[0].")


class TestValidatePack:
    def test_letter_group_mismatch(self):
        d = random_pack_dict(seed=1)
        d["entries"][0]["lemma"] = "APPLE" if d["entries"][0]["language"] == "ESL" else "ΜΗΛΟ"
        d["entries"][0]["letter_group"] = "B" if d["entries"][0]["language"] == "ESL" else "Β"
        report = validate_pack(parse_dict(d))
        assert "LetterGroupMismatch" in report.codes()

    def test_dangling_link(self):
        d = random_pack_dict(seed=2)
        d["links"].append({"gsl": d["entries"][0]["id"], "esl": "esl-missing"})
        report = validate_pack(parse_dict(d))
        assert "DanglingLink" in report.codes()

    def test_glyph_coverage_gap(self):
        d = random_pack_dict(seed=3)
        d["glyphs"] = [g for g in d["glyphs"] if not (g["language"] == "GSL" and g["letter"] == "Ω")]
        report = validate_pack(parse_dict(d))
        assert "GlyphCoverageGap" in report.codes()

    def test_dangling_media(self):
        d = random_pack_dict(seed=4)
        d["entries"][0]["sign_video"] = "video-ghost"
        report = validate_pack(parse_dict(d))
        assert "DanglingMedia" in report.codes()

    def test_missing_media_file(self, tmp_path):
        pack_dir = random_pack(tmp_path / "pack", seed=5)
        manifest, media_root = load_pack_dir(pack_dir)
        victim = next(iter(manifest.media_index.values()))
        (media_root / victim.path).unlink()
        report = validate_pack(manifest, media_root)
        assert "MissingMediaFile" in report.codes()

    def test_unsafe_media_path(self):
        d = random_pack_dict(seed=6)
        d["media"]["evil"] = {"kind": "image", "path": "../outside.png"}
        report = validate_pack(parse_dict(d))
        assert "UnsafePath" in report.codes()

    def test_duplicate_ids(self):
        d = random_pack_dict(seed=7)
        d["entries"].append(dict(d["entries"][0]))
        d["exercises"].append(dict(d["exercises"][0]))
        report = validate_pack(parse_dict(d))
        assert "DuplicateId" in report.codes()

    def test_duplicate_link_and_glyph(self):
        d = random_pack_dict(seed=8)
        if not d["links"]:
            d["links"] = [{"gsl": d["entries"][0]["id"], "esl": next(e["id"] for e in d["entries"] if e["language"] == "ESL")}]
        d["links"].append(dict(d["links"][0]))
        d["glyphs"].append(dict(d["glyphs"][0]))
        report = validate_pack(parse_dict(d))
        assert {"DuplicateLink", "DuplicateGlyph"} <= report.codes()

    def test_exercise_violations_are_pathed(self):
        d = random_pack_dict(seed=9)
        d["exercises"] = [
            {
                "id": "bad-mcq",
                "language": "GSL",
                "kind": "video_multiple_choice",
                "payload": {"video": "video-quiz", "options": ["a", "b"], "answer_key": 9},
            }
        ]
        d["media"]["video-quiz"] = {"kind": "video", "path": "media/q.mp4", "duration_ms": 1000}
        report = validate_pack(parse_dict(d))
        issue = next(i for i in report.errors if i.code == "AnswerKeyOutOfRange")
        assert issue.path.startswith("exercises[0]")

    def test_unknown_glyph_reference(self):
        d = random_pack_dict(seed=10)
        d["exercises"] = [
            {
                "id": "ex-bad",
                "language": "GSL",
                "kind": "hover_reveal",
                "payload": {"items": ["Α", "Ω"]},
            }
        ]
        d["glyphs"] = [g for g in d["glyphs"] if g["letter"] != "Ω"]
        report = validate_pack(parse_dict(d))
        assert "UnknownGlyph" in report.codes()

    def test_default_locale_must_exist(self):
        d = random_pack_dict(seed=11)
        d["default_locale"] = "xx"
        report = validate_pack(parse_dict(d))
        assert "UnknownDefaultLocale" in report.codes()

    def test_partial_locale_warns(self):
        d = random_pack_dict(seed=12)
        d["locales"]["de"] = {"menu.home": "Startseite"}
        report = validate_pack(parse_dict(d))
        assert any(w.code == "LocaleKeyGap" for w in report.warnings)
        assert report.ok

    def test_empty_pack_is_valid(self):
        manifest = parse_dict(minimal_manifest_dict())
        report = validate_pack(manifest)
        assert report.ok

    def test_media_duration_rules(self):
        d = minimal_manifest_dict(media={
            "v": {"kind": "video", "path": "media/v.mp4"},
            "i": {"kind": "image", "path": "media/i.png", "duration_ms": 4},
            "w": {"kind": "weird", "path": "media/w"},
        })
        report = validate_pack(parse_dict(d))
        assert {"MissingDuration", "UnexpectedDuration", "InvalidMediaKind"} <= report.codes()


class TestImportExport:
    def test_import_serves_new_content(self, tmp_path):
        store = ContentStore()
        pack_dir = random_pack(tmp_path / "pack", seed=20)
        snapshot = store.import_pack_dir(pack_dir)
        language = snapshot.lexicon.entries()[0].language
        letter = snapshot.lexicon.entries()[0].letter_group
        assert snapshot.lexicon.entries_by_letter(language, letter)

    def test_invalid_pack_leaves_snapshot_unchanged(self, tmp_path):
        store = ContentStore()
        good = store.import_pack_dir(random_pack(tmp_path / "good", seed=21))
        bad_dict = random_pack_dict(seed=22)
        bad_dict["entries"][0]["sign_video"] = "nope"
        with pytest.raises(ValidationFailed) as excinfo:
            store.import_pack(parse_dict(bad_dict))
        assert store.snapshot is good
        assert not excinfo.value.report.ok

    def test_reimport_is_idempotent(self, tmp_path):
        pack_dir = random_pack(tmp_path / "pack", seed=23)
        store = ContentStore()
        first = export_pack(store.import_pack_dir(pack_dir))
        second = export_pack(store.import_pack_dir(pack_dir))
        assert first == second

    def test_round_trip_structural_equality(self, tmp_path):
        pack_dir = random_pack(tmp_path / "pack", seed=24)
        manifest, media_root = load_pack_dir(pack_dir)
        snapshot = ContentStore().import_pack(manifest, media_root)
        exported = export_pack(snapshot)
        reparsed = parse_manifest(exported)
        assert manifest_to_canonical_dict(reparsed) == manifest_to_canonical_dict(manifest)

    def test_sample_pack_round_trip(self, sample_pack_dir):
        manifest, media_root = load_pack_dir(sample_pack_dir)
        snapshot = ContentStore().import_pack(manifest, media_root)
        exported = export_pack(snapshot)
        assert manifest_to_canonical_dict(parse_manifest(exported)) == manifest_to_canonical_dict(manifest)

    def test_export_byte_stable(self, tmp_path):
        pack_dir = random_pack(tmp_path / "pack", seed=25)
        manifest, media_root = load_pack_dir(pack_dir)
        snap_a = ContentStore().import_pack(manifest, media_root)
        snap_b = ContentStore().import_pack(manifest, media_root)
        assert export_pack(snap_a) == export_pack(snap_b)

    def test_empty_pack_exports_empty_lists(self):
        manifest = parse_dict(minimal_manifest_dict())
        snapshot = build_snapshot(manifest)
        reparsed = parse_manifest(export_pack(snapshot))
        assert reparsed.entries == [] and reparsed.media_index == {}

    def test_fuzz_round_trips(self, tmp_path):
        for seed in range(40, 50):
            pack_dir = random_pack(tmp_path / f"pack-{seed}", seed=seed)
            manifest, media_root = load_pack_dir(pack_dir)
            report = validate_pack(manifest, media_root)
            assert report.ok, f"seed {seed}: {[e.to_dict() for e in report.errors][:3]}"
            snapshot = ContentStore().import_pack(manifest, media_root)
            exported = export_pack(snapshot)
            assert manifest_to_canonical_dict(parse_manifest(exported)) == manifest_to_canonical_dict(manifest)

    def test_running_sessions_keep_old_snapshot(self, tmp_path):
        from signbridge.sessions import SessionStore

        store = ContentStore()
        store.import_pack_dir(random_pack(tmp_path / "first", seed=26))
        sessions = SessionStore(
            lambda eid: store.snapshot.exercises.get(eid) if store.snapshot else None
        )
        session = sessions.start_session("ex-memory", seed=1)
        pinned = session.exercise
        store.import_pack_dir(random_pack(tmp_path / "second", seed=27))
        assert sessions.get(session.id).exercise is pinned
