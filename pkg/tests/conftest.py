from __future__ import annotations

from pathlib import Path

import pytest

from signbridge.pack import ContentStore, Snapshot, load_pack_dir
from signbridge.samplepack import build_sample_pack


@pytest.fixture(scope="session")
def sample_pack_dir(tmp_path_factory: pytest.TempPathFactory) -> Path:
    dest = tmp_path_factory.mktemp("packs") / "sample"
    build_sample_pack(dest)
    return dest


@pytest.fixture(scope="session")
def sample_snapshot(sample_pack_dir: Path) -> Snapshot:
    store = ContentStore()
    return store.import_pack_dir(sample_pack_dir)


@pytest.fixture()
def sample_manifest(sample_pack_dir: Path):
    manifest, _ = load_pack_dir(sample_pack_dir)
    return manifest
