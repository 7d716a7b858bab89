"""Golden-file corpus runner: ``<name>.job`` next to ``<name>.expected.json``."""

import json
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from ..errors import HullforgeError
from .grammar import parse_job
from .runner import TIMING_KEY, dumps, run_job, strip_timing

EXPECTED_SUFFIX = ".expected.json"


def bundled_corpus():
    return Path(__file__).resolve().parent.parent / "corpus"


def run_file(path, max_power=None):
    """Report (without timing) and exit code for one job file; parse errors become reports too."""
    path = Path(path)
    try:
        job = parse_job(path.read_text(encoding="utf-8"))
    except HullforgeError as e:
        return {"schema": "hullforge-report/1", "job": path.stem, "error": e.to_json(),
                "exit_code": e.exit_code}, e.exit_code
    report, code = run_job(job, max_power, name=path.stem)
    return strip_timing(report), code


def _run_one(path):
    report, _ = run_file(path)
    return dumps(report)


def diff_paths(expected, actual, prefix=""):
    """Key paths where two JSON values differ."""
    if isinstance(expected, dict) and isinstance(actual, dict):
        out = []
        for k in sorted(set(expected) | set(actual)):
            if k == TIMING_KEY:
                continue
            p = f"{prefix}.{k}" if prefix else k
            if k not in expected:
                out.append(f"{p}: unexpected key")
            elif k not in actual:
                out.append(f"{p}: missing key")
            else:
                out.extend(diff_paths(expected[k], actual[k], p))
        return out
    if isinstance(expected, list) and isinstance(actual, list):
        if len(expected) != len(actual):
            return [f"{prefix}: length {len(expected)} != {len(actual)}"]
        out = []
        for i, (a, b) in enumerate(zip(expected, actual)):
            out.extend(diff_paths(a, b, f"{prefix}[{i}]"))
        return out
    return [] if expected == actual else [f"{prefix}: expected {expected!r}, got {actual!r}"]


def corpus_run(directory, update=False, jobs=1):
    """Run every job file, compare against expected reports; returns a summary dict."""
    directory = Path(directory)
    files = sorted(directory.glob("*.job"))
    summary = {"directory": str(directory), "files": [], "warnings": []}
    if not files:
        summary["warnings"].append("no job files found")
        summary["verdict"] = "pass"
        return summary
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outputs = list(pool.map(_run_one, files))
    else:
        outputs = [_run_one(f) for f in files]
    ok = True
    for f, text in zip(files, outputs):
        exp_path = f.with_name(f.stem + EXPECTED_SUFFIX)
        entry = {"file": f.name}
        if update:
            exp_path.write_text(text, encoding="utf-8")
            entry["status"] = "updated"
        elif not exp_path.exists():
            entry["status"] = "fail"
            entry["diffs"] = ["missing expected file"]
        else:
            try:
                expected = json.loads(exp_path.read_text(encoding="utf-8"))
            except (json.JSONDecodeError, UnicodeDecodeError) as e:
                expected = None
                entry["status"] = "fail"
                entry["diffs"] = [f"corrupted expected file: {e}"]
            if expected is not None:
                diffs = diff_paths(expected, json.loads(text))
                entry["status"] = "pass" if not diffs else "fail"
                if diffs:
                    entry["diffs"] = diffs
        ok &= entry["status"] != "fail"
        summary["files"].append(entry)
    summary["verdict"] = "pass" if ok else "fail"
    return summary


def corpus_outputs(directory, jobs=1):
    """Canonical report texts for every job file, in file order (for determinism checks)."""
    files = sorted(Path(directory).glob("*.job"))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return dict(zip([f.name for f in files], pool.map(_run_one, files)))
    return {f.name: _run_one(f) for f in files}
