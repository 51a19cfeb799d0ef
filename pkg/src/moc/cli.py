"""The moc command line tool.

Every subcommand operates on one (group, prime) workspace; the workspace
root comes from --workspace, falling back to $MOC_WORKSPACE and then the
current directory.  Exit codes: 0 success, 1 domain error, 2 format error,
3 inconclusive (a computation finished without settling the question).
"""

import argparse
import os
import sys

from . import session
from .exactnum import DomainError, FormatError


def build_parser():
    ap = argparse.ArgumentParser(
        prog="moc", description="modular character table workspace tool")
    sp = ap.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sp.add_parser(name, help=help_text)
        p.add_argument("--group", required=True, help="group name")
        p.add_argument("--prime", required=True, type=int,
                       help="characteristic p")
        p.add_argument("--workspace", default=None,
                       help="workspace root (default: $MOC_WORKSPACE or .)")
        return p

    p = add("init", "create the workspace files for a (group, prime) pair")
    p.add_argument("--legacy", action="store_true",
                   help="store record payloads in the legacy word encoding")

    p = add("import-table", "read a character table and store it canonically")
    p.add_argument("file", help="table file to import")
    p.add_argument("--legacy", action="store_true",
                   help="the input uses the legacy word encoding")

    add("blocks", "print the p-block distribution of the ordinary table")
    add("basicset", "choose a basic set and store the relations over it")

    p = add("certify", "certify that the named rows form a basic set")
    p.add_argument("--rows", required=True, help="comma list of row numbers")

    add("atoms", "certify unit columns of the pairing matrix as PIMs")

    p = add("tensor", "tensor two table rows into the matching pool")
    p.add_argument("--rows", required=True, help="the two row numbers a,b")
    p.add_argument("--defect0", action="store_true",
                   help="a factor has defect zero: store a projective")

    p = add("symmetrize", "symmetrize the square of a table row")
    p.add_argument("--row", required=True, type=int)
    p.add_argument("--minus", action="store_true",
                   help="antisymmetric part (default: symmetric)")

    for name, what in (("induce", "induce a subgroup character"),
                       ("restrict", "restrict a character to a subgroup")):
        p = add(name, what)
        p.add_argument("--sub", required=True, help="subgroup table file")
        p.add_argument("--fusion", required=True,
                       help="comma list: the class of each subgroup class")
        p.add_argument("--row", required=True, type=int)

    p = add("improve", "improve the basic sets / certify projectives")
    p.add_argument("op", choices=["pimtest", "subtract", "triangular",
                                  "split", "prune", "parity"])
    p.add_argument("--columns", help="comma list of columns (pimtest)")
    p.add_argument("--column", type=int, help="column number")
    p.add_argument("--target", type=int, help="projective pool row number")
    p.add_argument("--mode", choices=["indecomposable", "multiplicity_free"],
                   help="subtraction mode (default indecomposable)")
    p.add_argument("--degrees", help="comma list of degrees (parity)")
    p.add_argument("--real", help="comma list of real rows (parity)")
    p.add_argument("--trivial", type=int,
                   help="row of the trivial character (parity, default 1)")
    p.add_argument("--cap", type=int, help="enumeration cap (parity)")

    p = add("ilp", "run the integer linear programming solver on a record")
    p.add_argument("op", choices=["solve"])
    p.add_argument("--label", required=True, type=int,
                   help="record: objective row [c | 0], then rows [A | b]")

    p = add("put", "store a matrix file as a labeled record")
    p.add_argument("--file", required=True)
    p.add_argument("--label", required=True, type=int)
    p.add_argument("--into", default="state",
                   choices=["state", "bras", "proj"])
    p.add_argument("--legacy", action="store_true",
                   help="the input uses the legacy word encoding")

    p = add("get", "print a labeled record")
    p.add_argument("--label", required=True, type=int)
    p.add_argument("--into", default="state",
                   choices=["state", "bras", "proj"])

    add("status", "summarize the workspace state")

    p = add("trace", "print the generation chain of a pool character")
    p.add_argument("--id", required=True,
                   help="provenance id, e.g. p1, b2, c3")

    p = sp.add_parser("replay",
                      help="re-run the commands of an info log on a new root")
    p.add_argument("--log", required=True, help="info log to replay")
    p.add_argument("--workspace", default=None,
                   help="root to replay into (default: $MOC_WORKSPACE or .)")
    return ap


def _canonical_args(ns):
    skip = {"command", "group", "prime", "workspace"}
    args = {}
    for key, val in vars(ns).items():
        if key in skip or val is None or val is False:
            continue
        args[key] = "1" if val is True else str(val)
    return args


def run(argv=None):
    ns = build_parser().parse_args(argv)
    root = ns.workspace or os.environ.get("MOC_WORKSPACE") or "."
    try:
        if ns.command == "replay":
            with open(ns.log, "r", encoding="utf-8") as fh:
                text = fh.read()
            worst = 0
            for line, code in session.replay(text, root):
                print("exit %d: %s" % (code, line))
                worst = max(worst, code)
            return worst
        ws = session.Workspace(root=root, group=ns.group, prime=ns.prime)
        code, out = session.run_command(ws, ns.command, _canonical_args(ns))
    except FormatError as exc:
        print("format error: %s" % exc, file=sys.stderr)
        return 2
    except DomainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    for line in out:
        print(line)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
