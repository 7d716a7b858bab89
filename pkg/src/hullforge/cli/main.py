"""``hullforge run <file>`` and ``hullforge corpus [<dir>]``."""

import argparse
import sys
from pathlib import Path

from ..errors import HullforgeError
from .corpus import bundled_corpus, corpus_run
from .grammar import parse_job
from .runner import dumps, run_job


def build_parser():
    ap = argparse.ArgumentParser(prog="hullforge", description="Hulls of finitely presented modules.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one job file and print its JSON report")
    run.add_argument("file")
    run.add_argument("--max-power", type=int, default=None, help="cap on local hull stabilization steps")
    run.add_argument("--json", dest="json_out", default=None, help="write the report here instead of stdout")
    cor = sub.add_parser("corpus", help="run a directory of job files against expected reports")
    cor.add_argument("directory", nargs="?", default=None, help="defaults to the bundled corpus")
    cor.add_argument("--update", action="store_true", help="rewrite the expected files")
    cor.add_argument("--jobs", type=int, default=1, help="worker processes")
    return ap


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 4 if e.code else 0
    if args.command == "run":
        path = Path(args.file)
        try:
            job = parse_job(path.read_text(encoding="utf-8"))
        except OSError as e:
            sys.stderr.write(f"hullforge: {e}\n")
            return 4
        except HullforgeError as e:
            _emit(dumps({"schema": "hullforge-report/1", "job": path.stem, "error": e.to_json(),
                         "exit_code": e.exit_code}), args.json_out)
            return e.exit_code
        if args.max_power is not None and args.max_power < 1:
            sys.stderr.write("hullforge: --max-power must be positive\n")
            return 4
        report, code = run_job(job, args.max_power, name=path.stem)
        _emit(dumps(report), args.json_out)
        return code
    directory = Path(args.directory) if args.directory else bundled_corpus()
    if not directory.is_dir():
        sys.stderr.write(f"hullforge: {directory} is not a directory\n")
        return 4
    summary = corpus_run(directory, update=args.update, jobs=max(1, args.jobs))
    for w in summary["warnings"]:
        print(f"warning: {w}")
    for entry in summary["files"]:
        print(f"{entry['status']:7s} {entry['file']}")
        for d in entry.get("diffs", []):
            print(f"        {d}")
    print(f"corpus {summary['verdict']}")
    return 0 if summary["verdict"] == "pass" else 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
