"""Golden CLI outputs.

Every catalog group is pinned by the SHA-256 of its output; a small sample
is also kept verbatim under golden/. Regenerate both with

    python tests/golden_cases.py
"""
import hashlib
import io
import json
import pathlib
import sys

from repkit.cli import run
from repkit.groups import catalog

GOLDEN = pathlib.Path(__file__).parent / "golden"
DIGESTS = GOLDEN / "catalog.sha256.json"
SAMPLE = ["Z1", "Z2", "Z3", "Z6", "D1", "D3", "D6", "T", "O", "I",
          "2Z1", "2Z3", "2D1", "2D2", "2D4", "2T", "2O", "2I"]


def catalog_cases():
    for spec in catalog(120):
        s = spec.short
        yield f"group {s}", ["group", s]
        yield f"chartable {s}", ["chartable", s]
        yield f"action {s}", ["action", s, "--twice-j", "2"]
        if spec.binary:
            yield f"mckay {s}", ["mckay", s]
            yield f"mckay-dot {s}", ["mckay", s, "--format", "dot"]


def sample_cases():
    for s in SAMPLE:
        yield f"group_{s}.json", ["group", s]
        yield f"chartable_{s}.json", ["chartable", s]
        yield f"chartable_{s}.md", ["chartable", s, "--format", "md"]
        if s.startswith("2"):
            yield f"mckay_{s}.dot", ["mckay", s, "--format", "dot"]
    yield "search-generations.json", ["search-generations", "--max-order", "60"]
    yield "module-axiom_2I.json", ["module-axiom", "2I", "--twice-j", "3"]
    yield "product-module_T.json", ["product-module", "T", "--twice-j", "4"]


def output(argv) -> str:
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    if code:
        raise RuntimeError(f"{argv}: exit {code}: {err.getvalue()}")
    return out.getvalue()


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def regenerate():
    GOLDEN.mkdir(exist_ok=True)
    digests = {key: digest(output(argv)) for key, argv in catalog_cases()}
    DIGESTS.write_text(json.dumps(digests, indent=1, sort_keys=True) + "\n")
    for name, argv in sample_cases():
        (GOLDEN / name).write_text(output(argv))
    print(f"{len(digests)} digests, {len(list(sample_cases()))} sample files", file=sys.stderr)


if __name__ == "__main__":
    regenerate()
