"""Operator command line: validate, import, stats, serve, sample.

Exit codes are part of the contract:
  0  success
  1  validation errors, parse failure, or server-side rejection
  2  unreadable or missing pack path
  3  authentication failure against the admin endpoint
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import zipfile
from pathlib import Path

from .errors import ManifestSchemaError, ManifestSyntaxError, ValidationReport
from .exercises import ExerciseKind
from .lexicon import Language, alphabet
from .pack import ContentStore, PackManifest, load_pack_dir, validate_pack

TOKEN_ENV_VAR = "SIGNBRIDGE_ADMIN_TOKEN"
VALIDATION_SCHEMA = "signbridge.validation/1"
STATS_SCHEMA = "signbridge.stats/1"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNREADABLE = 2
EXIT_AUTH = 3


def _load_pack(pack_path: str) -> tuple[PackManifest, Path]:
    """Parse a pack dir (or manifest file); SystemExit(2) if unreadable."""
    path = Path(pack_path)
    manifest_file = path / "manifest.json" if path.is_dir() else path
    if not manifest_file.is_file():
        print(f"error: cannot read pack at {pack_path!r}", file=sys.stderr)
        raise SystemExit(EXIT_UNREADABLE)
    try:
        return load_pack_dir(path)
    except OSError as exc:
        print(f"error: cannot read pack: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_UNREADABLE) from exc


def _print_report(report: ValidationReport, output_format: str) -> None:
    if output_format == "machine":
        print(json.dumps({"schema": VALIDATION_SCHEMA, **report.to_dict()}, ensure_ascii=False))
        return
    for issue in report.errors:
        print(f"ERROR   {issue.code:<24} {issue.path}: {issue.message}")
    for issue in report.warnings:
        print(f"WARNING {issue.code:<24} {issue.path}: {issue.message}")
    print(f"{len(report.errors)} error(s), {len(report.warnings)} warning(s)")


def _parse_failure_report(exc: ManifestSyntaxError | ManifestSchemaError) -> ValidationReport:
    report = ValidationReport()
    path = exc.details.get("field", "") if isinstance(exc, ManifestSchemaError) else ""
    report.error(type(exc).__name__, path, exc.message)
    return report


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        manifest, media_root = _load_pack(args.pack)
    except (ManifestSyntaxError, ManifestSchemaError) as exc:
        _print_report(_parse_failure_report(exc), args.format)
        return EXIT_INVALID
    report = validate_pack(manifest, media_root)
    _print_report(report, args.format)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_import(args: argparse.Namespace) -> int:
    import httpx

    try:
        manifest, media_root = _load_pack(args.pack)
    except (ManifestSyntaxError, ManifestSchemaError) as exc:
        _print_report(_parse_failure_report(exc), args.format)
        return EXIT_INVALID
    report = validate_pack(manifest, media_root)
    if not report.ok:
        print("pack failed local validation; not uploading", file=sys.stderr)
        _print_report(report, args.format)
        return EXIT_INVALID

    token = args.token or os.environ.get(TOKEN_ENV_VAR)
    headers = {"Authorization": f"Bearer {token}"} if token else {}
    archive = _zip_pack(media_root)
    url = args.server.rstrip("/") + "/api/admin/pack"
    try:
        response = httpx.post(url, content=archive, headers=headers, timeout=60.0)
    except httpx.HTTPError as exc:
        print(f"error: upload failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if response.status_code in (401, 403):
        print(f"error: server refused the admin token ({response.status_code})", file=sys.stderr)
        return EXIT_AUTH
    if response.status_code >= 400:
        print("error: server rejected the pack:", file=sys.stderr)
        print(json.dumps(response.json(), ensure_ascii=False, indent=2), file=sys.stderr)
        return EXIT_INVALID
    body = response.json()
    print(
        f"imported {body.get('pack_name')} v{body.get('version')}: "
        f"{body.get('entries')} entries, {body.get('exercises')} exercises"
    )
    return EXIT_OK


def _zip_pack(pack_dir: Path) -> bytes:
    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w", compression=zipfile.ZIP_DEFLATED) as archive:
        for file_path in sorted(pack_dir.rglob("*")):
            if file_path.is_file():
                archive.write(file_path, file_path.relative_to(pack_dir).as_posix())
    return buffer.getvalue()


def compute_stats(manifest: PackManifest) -> dict:
    """Per-letter entry counts, translation coverage, and exercise kind counts."""
    by_language: dict[str, dict] = {}
    linked: set[str] = set()
    for link in manifest.links:
        linked.add(link.gsl)
        linked.add(link.esl)
    total_entries = len(manifest.entries)
    covered = sum(1 for entry in manifest.entries if entry.id in linked)
    for language in Language:
        letters = {letter: 0 for letter in alphabet(language).letters}
        count = 0
        for entry in manifest.entries:
            if entry.language == language.value:
                count += 1
                if entry.letter_group in letters:
                    letters[entry.letter_group] += 1
        by_language[language.value] = {"entries": count, "by_letter": letters}
    kinds = {kind.value: 0 for kind in ExerciseKind}
    for exercise in manifest.exercises:
        if exercise.kind in kinds:
            kinds[exercise.kind] += 1
    return {
        "pack_name": manifest.pack_name,
        "version": manifest.version,
        "languages": by_language,
        "translation_coverage_pct": round(100.0 * covered / total_entries, 1) if total_entries else 0.0,
        "exercises_total": len(manifest.exercises),
        "exercises_by_kind": kinds,
        "locales": sorted(manifest.locales),
    }


def cmd_stats(args: argparse.Namespace) -> int:
    try:
        manifest, _ = _load_pack(args.pack)
    except (ManifestSyntaxError, ManifestSchemaError) as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_INVALID
    stats = compute_stats(manifest)
    if args.format == "machine":
        print(json.dumps({"schema": STATS_SCHEMA, **stats}, ensure_ascii=False))
        return EXIT_OK
    print(f"pack: {stats['pack_name']} v{stats['version']}")
    for language, block in stats["languages"].items():
        nonzero = {letter: n for letter, n in block["by_letter"].items() if n}
        groups = " ".join(f"{letter}:{n}" for letter, n in nonzero.items()) or "-"
        print(f"{language}: {block['entries']} entries  [{groups}]")
    print(f"translation coverage: {stats['translation_coverage_pct']}%")
    print(f"exercises: {stats['exercises_total']}")
    for kind, count in stats["exercises_by_kind"].items():
        if count:
            print(f"  {kind}: {count}")
    print(f"locales: {', '.join(stats['locales']) or '-'}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import build_state, create_app

    try:
        manifest, media_root = _load_pack(args.pack)
    except (ManifestSyntaxError, ManifestSchemaError) as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_INVALID
    report = validate_pack(manifest, media_root)
    if not report.ok:
        print("refusing to serve an invalid pack:", file=sys.stderr)
        _print_report(report, "human")
        return EXIT_INVALID

    store = ContentStore()
    store.import_pack(manifest, media_root)
    token = args.token or os.environ.get(TOKEN_ENV_VAR)
    if token is None:
        print("note: no admin token configured; pack upload endpoint is disabled", file=sys.stderr)
    data_dir = Path(args.data_dir) if args.data_dir else None
    state = build_state(
        store,
        admin_token=token,
        upload_dir=data_dir / "uploads" if data_dir else None,
        contact_log=data_dir / "contact-messages.jsonl" if data_dir else None,
    )
    app = create_app(state)
    if args.ui:
        ui_dir = Path(args.ui)
        if not ui_dir.is_dir():
            print(f"error: UI directory {args.ui!r} does not exist", file=sys.stderr)
            return EXIT_INVALID
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    host, _, port_text = args.bind.partition(":")
    try:
        port = int(port_text) if port_text else 8000
    except ValueError:
        print(f"error: invalid bind address {args.bind!r}", file=sys.stderr)
        return EXIT_INVALID
    try:
        uvicorn.run(app, host=host or "127.0.0.1", port=port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"error: server failed to start: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    from .samplepack import build_sample_pack

    dest = Path(args.dest)
    build_sample_pack(dest, with_media=not args.no_media)
    print(f"sample pack written to {dest}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signbridge",
        description="Administer the sign-language learning platform: validate, upload and serve content packs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pack_arg(p: argparse.ArgumentParser) -> None:
        p.add_argument("--pack", required=True, help="pack directory (or manifest.json path)")

    def add_format_arg(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("human", "machine"), default="human")

    p_validate = sub.add_parser("validate", help="validate a pack and print the report")
    add_pack_arg(p_validate)
    add_format_arg(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_import = sub.add_parser("import", help="upload a pack to a running server")
    add_pack_arg(p_import)
    add_format_arg(p_import)
    p_import.add_argument("--server", required=True, help="base URL of the running service")
    p_import.add_argument("--token", help=f"admin token (falls back to ${TOKEN_ENV_VAR})")
    p_import.set_defaults(func=cmd_import)

    p_stats = sub.add_parser("stats", help="print content statistics for a pack")
    add_pack_arg(p_stats)
    add_format_arg(p_stats)
    p_stats.set_defaults(func=cmd_stats)

    p_serve = sub.add_parser("serve", help="serve a pack over HTTP until interrupted")
    add_pack_arg(p_serve)
    p_serve.add_argument("--bind", default="127.0.0.1:8000", help="HOST:PORT to listen on")
    p_serve.add_argument("--token", help=f"admin token (falls back to ${TOKEN_ENV_VAR})")
    p_serve.add_argument("--ui", help="directory with the built web UI to serve at /")
    p_serve.add_argument("--data-dir", help="directory for uploads and the contact-message log")
    p_serve.set_defaults(func=cmd_serve)

    p_sample = sub.add_parser("sample", help="write the built-in sample pack to a directory")
    p_sample.add_argument("--dest", required=True, help="destination directory")
    p_sample.add_argument("--no-media", action="store_true", help="write the manifest only")
    p_sample.set_defaults(func=cmd_sample)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except KeyboardInterrupt:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
