"""Shared fixtures: the seven reference nets, loaded from their files.

Inline definitions live in `NETS` so structural tests can reference exact
arcs; the fixtures parse the committed .net files, which keeps the loader
itself under test on every run.  `test_fileio` pins the files to the
canonical serialization of these definitions.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from wfnet import Net, parse_net

DATA_DIR = Path(__file__).parent / "data"

NETS: dict[str, Net] = {
    "pand": Net.of(
        places=["p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8"],
        transitions=["t1", "t2", "t3"],
        arcs=[
            ("p1", "t1"), ("p2", "t2"), ("p3", "t2"), ("t1", "p4"), ("t2", "p5"),
            ("t2", "p8"), ("p4", "t3"), ("p5", "t3"), ("t3", "p6"), ("t3", "p7"),
        ],
        inputs=["p1", "p2", "p3"],
        outputs=["p6", "p7", "p8"],
        name="pand",
    ),
    "tand11": Net.of(
        places=["p1", "p2", "p3", "p5", "p6"],
        transitions=["t2", "t3", "t4", "t6"],
        arcs=[
            ("t2", "p1"), ("t2", "p2"), ("t2", "p3"), ("p1", "t3"), ("p2", "t3"),
            ("p3", "t4"), ("t3", "p5"), ("t4", "p6"), ("p5", "t6"), ("p6", "t6"),
        ],
        inputs=["t2"],
        outputs=["t6"],
        name="tand11",
    ),
    "por11": Net.of(
        places=["p1", "p3", "p4"],
        transitions=["t1", "t2", "t3", "t4", "t5", "t6"],
        arcs=[
            ("p1", "t1"), ("t1", "p1"), ("p1", "t2"), ("p1", "t3"), ("t2", "p3"),
            ("t3", "p3"), ("p3", "t6"), ("t6", "p4"), ("p4", "t5"), ("t5", "p3"),
            ("p4", "t4"), ("t4", "p1"),
        ],
        inputs=["p1"],
        outputs=["p4"],
        name="por11",
    ),
    "tor": Net.of(
        places=["p1", "p2", "p3"],
        transitions=["t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9", "t10"],
        arcs=[
            ("t1", "p1"), ("t2", "p1"), ("t3", "p2"), ("t4", "p1"), ("p1", "t5"),
            ("p1", "t7"), ("p2", "t6"), ("p2", "t10"), ("t10", "p2"), ("t5", "p3"),
            ("t6", "p3"), ("p3", "t4"), ("p3", "t8"), ("p3", "t9"),
        ],
        inputs=["t1", "t2", "t3"],
        outputs=["t7", "t8", "t9"],
        name="tor",
    ),
    "tand_wide": Net.of(
        places=["p1", "p2", "p3", "p4", "p5", "p6"],
        transitions=["t1", "t2", "t3", "t4", "t5", "t6"],
        arcs=[
            ("t1", "p1"), ("t1", "p4"), ("t2", "p2"), ("t2", "p3"), ("p1", "t3"),
            ("p2", "t3"), ("p3", "t4"), ("p4", "t5"), ("t3", "p5"), ("t4", "p6"),
            ("p5", "t6"), ("p6", "t6"),
        ],
        inputs=["t1", "t2"],
        outputs=["t5", "t6"],
        name="tand_wide",
    ),
    "por_wide": Net.of(
        places=["p1", "p2", "p3", "p4", "p5"],
        transitions=["t1", "t2", "t3", "t4", "t5", "t6", "t7"],
        arcs=[
            ("p1", "t1"), ("t1", "p1"), ("p1", "t2"), ("p2", "t3"), ("p2", "t4"),
            ("p2", "t7"), ("t2", "p3"), ("t3", "p3"), ("t4", "p3"), ("t5", "p3"),
            ("p3", "t6"), ("t6", "p4"), ("p4", "t5"), ("t7", "p5"),
        ],
        inputs=["p1", "p2"],
        outputs=["p4", "p5"],
        name="por_wide",
    ),
    "nested": Net.of(
        places=[f"p{i}" for i in range(1, 14)],
        transitions=[f"t{i}" for i in range(1, 12)],
        arcs=[
            ("p2", "t1"), ("p2", "t2"), ("p3", "t1"), ("p3", "t2"), ("t1", "p4"),
            ("t2", "p5"), ("p4", "t3"), ("t3", "p5"), ("p4", "t4"), ("p5", "t5"),
            ("t4", "p6"), ("t5", "p6"), ("t4", "p13"), ("t5", "p13"), ("p1", "t6"),
            ("p1", "t7"), ("p6", "t6"), ("p6", "t7"), ("t6", "p7"), ("t6", "p8"),
            ("t7", "p7"), ("t7", "p8"), ("p7", "t8"), ("p8", "t9"), ("t8", "p9"),
            ("t9", "p10"), ("p9", "t10"), ("p10", "t10"), ("t10", "p7"),
            ("t10", "p8"), ("p9", "t11"), ("p10", "t11"), ("t11", "p11"),
            ("t11", "p12"),
        ],
        inputs=["p1", "p2", "p3"],
        outputs=["p11", "p12", "p13"],
        name="nested",
    ),
}


def load_fixture(stem: str) -> Net:
    text = (DATA_DIR / f"{stem}.net").read_text(encoding="utf-8")
    return parse_net(text).net


@pytest.fixture(scope="session")
def pand() -> Net:
    return load_fixture("pand")


@pytest.fixture(scope="session")
def tand11() -> Net:
    return load_fixture("tand11")


@pytest.fixture(scope="session")
def por11() -> Net:
    return load_fixture("por11")


@pytest.fixture(scope="session")
def tor() -> Net:
    return load_fixture("tor")


@pytest.fixture(scope="session")
def tand_wide() -> Net:
    return load_fixture("tand_wide")


@pytest.fixture(scope="session")
def por_wide() -> Net:
    return load_fixture("por_wide")


@pytest.fixture(scope="session")
def nested() -> Net:
    return load_fixture("nested")


@pytest.fixture(scope="session")
def all_fixture_nets() -> dict[str, Net]:
    return {stem: load_fixture(stem) for stem in NETS}
