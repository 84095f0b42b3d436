import contextlib
import io
import json
from pathlib import Path

from chanfit import cli
from chanfit.dataset import ingest, validate
from chanfit.errors import InputError

CORRUPT = Path(__file__).parent / "fixtures" / "corrupt"


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = cli.main([str(a) for a in argv])
        except SystemExit as exc:  # argparse usage errors
            code = exc.code
    return code, out.getvalue(), err.getvalue()


def corrupt_cases():
    return json.loads((CORRUPT / "expected.json").read_text())


def check_corrupt(name, exp):
    """Return a list of mismatches between a fixture's behaviour and its expectation."""
    path = CORRUPT / name
    problems = []

    try:
        result = ingest(path, strict=False)
        diags = result.diagnostics + validate(result.points)
        messages = [(d.line, d.message, d.lines) for d in diags]
    except InputError as exc:
        messages = [(None, str(exc), ())]
    hits = [m for m in messages if exp["diagnostic"] in m[1]]
    if not hits:
        problems.append(f"{name}: no diagnostic containing {exp['diagnostic']!r} in {messages}")
    elif hits[0][0] != exp["line"]:
        problems.append(f"{name}: diagnostic on line {hits[0][0]}, expected {exp['line']}")
    elif "lines" in exp and list(hits[0][2]) != exp["lines"]:
        problems.append(f"{name}: diagnostic lines {hits[0][2]}, expected {exp['lines']}")

    for label, argv in (
        ("ingest", ("ingest", "--strict", "--dataset", path)),
        ("ingest_lenient", ("ingest", "--dataset", path)),
        ("validate_strict", ("validate", "--strict", "--dataset", path)),
    ):
        code, _, err = run_cli(*argv)
        if code != exp[label]:
            problems.append(f"{name}: {label} exit {code}, expected {exp[label]}")
        if code == 2 and label != "validate_strict" and exp["diagnostic"] not in err:
            problems.append(f"{name}: {label} stderr lacks {exp['diagnostic']!r}")
    return problems
