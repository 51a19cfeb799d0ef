"""Workspace persistence, the command engine, and info-log replay.

A workspace is a directory holding one cluster of files per (group, prime)
pair:

    {G}.{p}        main state: labeled integer-matrix records
    {G}.{p}.bras   pool of Brauer characters (rows over the basic set)
    {G}.{p}.proj   pool of projective characters
    {G}.{p}.tbl    the imported character table, in canonical text form
    {G}.{p}.info   append-only log: command echoes, result prose, provenance

State files share one grammar: a three-line header, then labeled records,
then the sentinel line "end".  Each record is an integer matrix in the
standard matrix text form (or the legacy word stream when the header says
so).  Records with labels this code does not know are carried through
rewrites untouched, so files written by a richer tool survive a round trip.

Every command appends its echo line to the info log before touching any
state, and each state file is replaced atomically (temporary file plus
os.replace), so an interrupted command leaves every file either old or new,
never mixed.  Replaying the "$" command lines of an info log against a
fresh root reproduces the state files byte for byte; `replay` does exactly
that.  A lock file admits a single writer at a time.
"""

import contextlib
import os
import re
import shlex
import time
from dataclasses import dataclass
from fractions import Fraction

from . import basis, chartable, charops, ilp, improve, intlin
from .exactnum import DomainError, FormatError

# Record labels.  The 30xxx range is reserved for labeled workspace records.
LABEL_BASIC_SET = 30010        # 1 x k row: basic-set row indices into the table
LABEL_PAIRING = 30020          # s x s pairing matrix <BS, PS>
LABEL_PIMS = 30030             # 1 x k row: columns certified indecomposable
LABEL_BRAUER_POOL = 30500      # Brauer character pool, rows over the basic set
LABEL_RELATIONS = 30550        # every restricted character over the basic set
LABEL_PROJ_POOL = 30700        # projective character pool
LABEL_CLASS_FUNCTIONS = 30900  # scratch class functions

LABEL_MIN, LABEL_MAX = 30000, 30999

_HEADER = "moc workspace 1"
_ECHO_RE = re.compile(r"^\[[^\]]*\] \$ (.+)$")
_PROV_RE = re.compile(r"^\[[^\]]*\] \| prov (\S+) (.*)$")


@dataclass
class LabeledRecord:
    label: int
    rows: list


@dataclass
class Workspace:
    root: str
    group: str
    prime: int

    def _base(self):
        return os.path.join(self.root, "%s.%d" % (self.group, self.prime))

    @property
    def state_path(self):
        return self._base()

    @property
    def bras_path(self):
        return self._base() + ".bras"

    @property
    def proj_path(self):
        return self._base() + ".proj"

    @property
    def table_path(self):
        return self._base() + ".tbl"

    @property
    def info_path(self):
        return self._base() + ".info"

    @property
    def lock_path(self):
        return self._base() + ".lock"

    def path(self, which):
        try:
            return {"state": self.state_path, "bras": self.bras_path,
                    "proj": self.proj_path}[which]
        except KeyError:
            raise DomainError("unknown state file %r" % (which,))


def state_files(ws):
    """The files whose bytes define the workspace state (the log excluded)."""
    return [ws.state_path, ws.bras_path, ws.proj_path, ws.table_path]


# ---------------------------------------------------------------------------
# state file grammar


def _atomic_write(path, text):
    tmp = "%s.tmp.%d" % (path, os.getpid())
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _read_file(path):
    if not os.path.exists(path):
        raise DomainError("missing workspace file %s (run init first)" % path)
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if len(lines) < 4 or lines[0] != _HEADER:
        raise FormatError("%s: bad workspace header" % path)
    if not re.fullmatch(r"group \S+ prime \d+", lines[1]):
        raise FormatError("%s: bad group/prime line" % path)
    if lines[2] not in ("payload decimal", "payload legacy"):
        raise FormatError("%s: bad payload line" % path)
    if lines[-1] != "end":
        raise FormatError("%s: truncated workspace file" % path)
    legacy = lines[2].endswith("legacy")
    records = []
    i = 3
    while i < len(lines) - 1:
        m = re.fullmatch(r"record (\d+)", lines[i])
        if not m:
            raise FormatError("%s: expected a record header, got %r"
                              % (path, lines[i]))
        label = int(m.group(1))
        i += 1
        chunk = []
        while i < len(lines) - 1 and not lines[i].startswith("record "):
            chunk.append(lines[i])
            i += 1
        rows = intlin.parse_matrix("\n".join(chunk) + "\n", legacy=legacy)
        records.append(LabeledRecord(label, rows))
    return legacy, records


def _write_file(path, ws, legacy, records):
    lines = [_HEADER,
             "group %s prime %d" % (ws.group, ws.prime),
             "payload %s" % ("legacy" if legacy else "decimal")]
    for rec in records:
        if not LABEL_MIN <= rec.label <= LABEL_MAX:
            raise DomainError("label %r outside the record range" % (rec.label,))
        if not rec.rows:
            raise DomainError("refusing to store empty record %d" % rec.label)
        lines.append("record %d" % rec.label)
        lines.append(intlin.format_matrix(rec.rows, legacy=legacy).rstrip("\n"))
    lines.append("end")
    _atomic_write(path, "\n".join(lines) + "\n")


def ws_read(ws, which, label):
    """The record stored under the label; not finding it is an error."""
    _legacy, records = _read_file(ws.path(which))
    for rec in records:
        if rec.label == label:
            return rec
    raise DomainError("record %d not found in %s" % (label, ws.path(which)))


def ws_rows(ws, which, label):
    """Rows of the record under the label, or [] when it is absent."""
    _legacy, records = _read_file(ws.path(which))
    for rec in records:
        if rec.label == label:
            return rec.rows
    return []


def ws_write(ws, which, label, rows):
    """Store rows under the label, replacing an existing record in place.

    Records under other labels -- known or not -- are carried over
    untouched.  Storing an empty row list removes the record.
    """
    path = ws.path(which)
    legacy, records = _read_file(path)
    out = [rec for rec in records if rec.label != label]
    if rows:
        for pos, rec in enumerate(records):
            if rec.label == label:
                out.insert(pos, LabeledRecord(label, [list(r) for r in rows]))
                break
        else:
            out.append(LabeledRecord(label, [list(r) for r in rows]))
    _write_file(path, ws, legacy, out)


# ---------------------------------------------------------------------------
# info log


def _append_info(ws, lines):
    stamp = time.strftime("%Y-%m-%d %H:%M:%S")
    with open(ws.info_path, "a", encoding="utf-8") as fh:
        for line in lines:
            fh.write("[%s] %s\n" % (stamp, line))


def _info_block(lines, mark="|"):
    out = []
    for line in lines:
        for part in str(line).split("\n"):
            out.append("%s %s" % (mark, part))
    return out


@contextlib.contextmanager
def _locked(ws):
    os.makedirs(ws.root or ".", exist_ok=True)
    try:
        fd = os.open(ws.lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise DomainError("workspace is locked by another writer (%s)"
                          % ws.lock_path)
    try:
        os.write(fd, b"%d\n" % os.getpid())
        os.close(fd)
        yield
    finally:
        try:
            os.unlink(ws.lock_path)
        except OSError:
            pass


def format_command(ws, command, args):
    full = dict(args)
    full["group"] = ws.group
    full["prime"] = str(ws.prime)
    parts = [command]
    for key in sorted(full):
        parts.append("%s=%s" % (key, shlex.quote(str(full[key]))))
    return " ".join(parts)


def parse_command(text):
    toks = shlex.split(text)
    if not toks:
        raise FormatError("empty command line")
    command, args = toks[0], {}
    for tok in toks[1:]:
        key, eq, val = tok.partition("=")
        if not eq:
            raise FormatError("bad command argument %r" % (tok,))
        args[key] = val
    group = args.pop("group", None)
    prime = args.pop("prime", None)
    if group is None or prime is None:
        raise FormatError("command line lacks group/prime: %r" % (text,))
    return command, group, int(prime), args


def run_command(ws, command, args=None):
    """Execute one workspace command; returns (exit code, output lines).

    The command echo goes to the log before any state is touched; state
    files are only rewritten after the whole computation succeeded.  Domain
    and format errors are recorded in the log and re-raised for the caller
    to map to an exit code.
    """
    args = dict(args or {})
    handler = _HANDLERS.get(command)
    if handler is None:
        raise DomainError("unknown command %r" % (command,))
    with _locked(ws):
        _append_info(ws, ["$ " + format_command(ws, command, args)])
        try:
            code, out, info = handler(ws, args)
        except (DomainError, FormatError) as exc:
            _append_info(ws, ["| error: %s" % exc])
            raise
        _append_info(ws, _info_block(info) + ["| exit %d" % code])
        return code, out


def replay(info_text, root):
    """Re-run every command echoed in an info log against the given root.

    Returns a list of (command line, exit code).  A clean log replayed into
    an empty directory rebuilds the state files byte for byte; failed
    commands fail again and, as in the original run, leave no trace in the
    state.
    """
    results = []
    for line in info_text.splitlines():
        m = _ECHO_RE.match(line)
        if not m:
            continue
        command, group, prime, args = parse_command(m.group(1))
        ws = Workspace(root=root, group=group, prime=prime)
        try:
            code, _out = run_command(ws, command, args)
        except DomainError:
            code = 1
        except FormatError:
            code = 2
        results.append((m.group(1), code))
    return results


# ---------------------------------------------------------------------------
# argument helpers


def _require_init(ws):
    if not os.path.exists(ws.state_path):
        raise DomainError("workspace for %s mod %d not initialised"
                          % (ws.group, ws.prime))


def _load_table(ws):
    if not os.path.exists(ws.table_path):
        raise DomainError("no character table imported for %s mod %d"
                          % (ws.group, ws.prime))
    with open(ws.table_path, "r", encoding="ascii") as fh:
        return chartable.read_table(fh.read())


def _flag(args, key):
    return str(args.get(key, "")).lower() in ("1", "true", "yes")


def _int_arg(args, key, default=None):
    if key not in args:
        if default is None:
            raise DomainError("missing argument %s" % key)
        return default
    try:
        return int(args[key])
    except (TypeError, ValueError):
        raise DomainError("argument %s must be an integer, got %r"
                          % (key, args[key]))


def _index_list(args, key, default=None):
    """A comma list of 1-based indices, returned 0-based."""
    if key not in args or str(args[key]) == "":
        if default is None:
            raise DomainError("missing argument %s" % key)
        return list(default)
    out = []
    for tok in str(args[key]).split(","):
        try:
            v = int(tok)
        except ValueError:
            raise DomainError("argument %s must list integers, got %r"
                              % (key, tok))
        if v < 1:
            raise DomainError("argument %s uses 1-based indices" % key)
        out.append(v - 1)
    return out


def _check_row(i, rows, what):
    if not 0 <= i < len(rows):
        raise DomainError("%s %d out of range (1..%d)" % (what, i + 1, len(rows)))


def _regular_rows(ws, table):
    """Table rows usable on p-regular classes (restricting when ordinary)."""
    if table.prime == 0:
        sub, _cols = charops.hat_restrict(table, ws.prime, table.rows,
                                          table.labels)
        return sub.rows, True
    return table.rows, False


def _irr_coefficients(table, row):
    coeffs = []
    for irr in table.rows:
        v = Fraction(charops.inner_product(table, row, irr))
        if v.denominator != 1:
            raise DomainError("inner product %s is not integral" % v)
        coeffs.append(int(v))
    return coeffs


def _pim_set(ws):
    rows = ws_rows(ws, "state", LABEL_PIMS)
    return set(rows[0]) if rows else set()


def _store_pims(ws, pims):
    ws_write(ws, "state", LABEL_PIMS, [sorted(pims)] if pims else [])


def _append_pool(ws, which, label, row):
    pool = [list(r) for r in ws_rows(ws, which, label)]
    pool.append([int(v) for v in row])
    ws_write(ws, which, label, pool)
    return len(pool)


# ---------------------------------------------------------------------------
# commands


def _cmd_init(ws, args):
    if os.path.exists(ws.state_path):
        raise DomainError("workspace for %s mod %d already exists"
                          % (ws.group, ws.prime))
    legacy = _flag(args, "legacy")
    for which in ("state", "bras", "proj"):
        _write_file(ws.path(which), ws, legacy, [])
    info = ["workspace created for %s mod %d" % (ws.group, ws.prime)]
    return 0, list(info), info


def _cmd_import_table(ws, args):
    _require_init(ws)
    path = args.get("file")
    if not path:
        raise DomainError("missing argument file")
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError("cannot read table file %s: %s" % (path, exc))
    table = chartable.read_table(text, legacy=_flag(args, "legacy"))
    if table.prime not in (0, ws.prime):
        raise DomainError("table is modular for p = %d, workspace is mod %d"
                          % (table.prime, ws.prime))
    _atomic_write(ws.table_path, chartable.write_table(table))
    kind = "ordinary" if table.prime == 0 else "p = %d Brauer" % table.prime
    info = ["table %s imported from %s:" % (table.name, path),
            "  %d %s characters on %d classes"
            % (len(table.rows), kind, len(table.classes))]
    return 0, list(info), info


def _cmd_blocks(ws, args):
    _require_init(ws)
    table = _load_table(ws)
    dist = chartable.block_distribution(table, ws.prime)
    info = []
    for bi, rows in enumerate(dist.blocks):
        labs = " ".join(table.labels[ri] for ri in rows)
        info.append("block %d: %d characters, defect %d: %s"
                    % (bi + 1, len(rows), dist.defects[bi], labs))
    return 0, list(info), info


def _cmd_basicset(ws, args):
    _require_init(ws)
    table = _load_table(ws)
    reg_rows, restricted = _regular_rows(ws, table)
    info = []
    if restricted:
        info.append("ordinary characters restricted to p-regular classes")
    chosen = []
    for i, row in enumerate(reg_rows):
        if intlin.row_rank([reg_rows[j] for j in chosen] + [row]) > len(chosen):
            chosen.append(i)
    base = [reg_rows[j] for j in chosen]
    relations, undecided = [], []
    for i, row in enumerate(reg_rows):
        res = intlin.dec_solve(row, base)
        if res.status == "coefficients":
            relations.append([int(c) for c in res.coeffs])
        else:
            undecided.append(i)
    if undecided:
        info.append("characters no %s not settled over the chosen set"
                    % " ".join(str(i + 1) for i in undecided))
        return 3, list(info), info
    ws_write(ws, "state", LABEL_BASIC_SET, [list(chosen)])
    ws_write(ws, "state", LABEL_RELATIONS, relations)
    info.append("basic set: characters no %s"
                % " ".join(str(i + 1) for i in chosen))
    info.append("relations stored under %d" % LABEL_RELATIONS)
    return 0, list(info), info


def _cmd_certify(ws, args):
    _require_init(ws)
    table = _load_table(ws)
    reg_rows, _restricted = _regular_rows(ws, table)
    idx = _index_list(args, "rows")
    for i in idx:
        _check_row(i, reg_rows, "row")
    res = basis.certify_brauer_basic([reg_rows[i] for i in idx], reg_rows)
    if res.status == "basic":
        ws_write(ws, "state", LABEL_BASIC_SET, [list(idx)])
        ws_write(ws, "state", LABEL_RELATIONS,
                 [[int(c) for c in r] for r in res.relations])
        info = ["characters no %s certified as a basic set"
                % " ".join(str(i + 1) for i in idx),
                "relations stored under %d" % LABEL_RELATIONS]
        return 0, list(info), info
    if res.status == "not_basic":
        info = ["candidate rejected: %s"
                % res.witness.get("reason", "unknown")]
        return 1, list(info), info
    info = ["certificate inconclusive"]
    return 3, list(info), info


def _cmd_atoms(ws, args):
    _require_init(ws)
    u = ws_read(ws, "state", LABEL_PAIRING).rows
    found = basis.detect_atom_pims(u)
    pims = _pim_set(ws)
    info = []
    for j, _i in found:
        pims.add(j)
        info.append("projective  nr%6d in block%4d is indecomposable,"
                    % (j + 1, 1))
        info.append("  because it is an atom")
    if not found:
        info.append("no atoms found")
    _store_pims(ws, pims)
    return 0, list(info), info


def _cmd_tensor(ws, args):
    _require_init(ws)
    table = _load_table(ws)
    pair = _index_list(args, "rows")
    if len(pair) != 2:
        raise DomainError("tensor needs exactly two row numbers")
    a, b = pair
    _check_row(a, table.rows, "row")
    _check_row(b, table.rows, "row")
    prod = charops.tensor_rows(table, table.rows[a], table.rows[b])
    if table.prime:
        bs = ws_rows(ws, "state", LABEL_BASIC_SET)
        if not bs:
            raise DomainError("no basic set stored; run basicset first")
        base = [table.rows[j] for j in bs[0]]
        res = intlin.dec_solve(prod, base)
        if res.status != "coefficients":
            info = ["product is not integral over the basic set (%s)"
                    % res.status]
            return 3, list(info), info
        n = _append_pool(ws, "bras", LABEL_BRAUER_POOL, res.coeffs)
        info = ["Brauer characters no%6d obtained by:" % n,
                "  tensoring Brauer characters no %d and no %d"
                % (a + 1, b + 1),
                "prov b%d tensor t%d t%d" % (n, a + 1, b + 1)]
        out = ["b%d = %s" % (n, " ".join(str(int(c)) for c in res.coeffs))]
        return 0, out, info
    coeffs = _irr_coefficients(table, prod)
    if _flag(args, "defect0"):
        if not (chartable.defect_zero(table, a, ws.prime)
                or chartable.defect_zero(table, b, ws.prime)):
            raise DomainError("neither factor has defect zero at p = %d"
                              % ws.prime)
        n = _append_pool(ws, "proj", LABEL_PROJ_POOL, coeffs)
        info = ["projectives no%6d obtained by:" % n,
                "  tensoring ordinaries with defect 0 characters",
                "prov p%d tensor0 t%d t%d" % (n, a + 1, b + 1)]
        out = ["p%d = %s" % (n, " ".join(str(c) for c in coeffs))]
        return 0, out, info
    n = _append_pool(ws, "state", LABEL_CLASS_FUNCTIONS, coeffs)
    info = ["class functions no%6d obtained by:" % n,
            "  tensoring ordinaries no %d and no %d" % (a + 1, b + 1),
            "prov c%d tensor t%d t%d" % (n, a + 1, b + 1)]
    out = ["c%d = %s" % (n, " ".join(str(c) for c in coeffs))]
    return 0, out, info


def _cmd_symmetrize(ws, args):
    _require_init(ws)
    table = _load_table(ws)
    r = _int_arg(args, "row") - 1
    _check_row(r, table.rows, "row")
    minus = _flag(args, "minus")
    shape = "minus" if minus else "plus"
    if table.prime == 0:
        fn = charops.sym_square_minus if minus else charops.sym_square_plus
        coeffs = _irr_coefficients(table, fn(table, table.rows[r]))
        n = _append_pool(ws, "state", LABEL_CLASS_FUNCTIONS, coeffs)
        info = ["class functions no%6d obtained by:" % n,
                "  symmetrizing ordinary no %d (%s square)" % (r + 1, shape),
                "prov c%d sym2%s t%d" % (n, shape[0], r + 1)]
        out = ["c%d = %s" % (n, " ".join(str(c) for c in coeffs))]
        return 0, out, info
    lam = [1, 1] if minus else [2]
    row = charops.symmetrize(table, table.rows[r], lam, p=ws.prime)
    bs = ws_rows(ws, "state", LABEL_BASIC_SET)
    if not bs:
        raise DomainError("no basic set stored; run basicset first")
    base = [table.rows[j] for j in bs[0]]
    res = intlin.dec_solve(row, base)
    if res.status != "coefficients":
        info = ["symmetrization not integral over the basic set (%s)"
                % res.status]
        return 3, list(info), info
    n = _append_pool(ws, "bras", LABEL_BRAUER_POOL, res.coeffs)
    info = ["Brauer characters no%6d obtained by:" % n,
            "  symmetrizing Brauer character no %d (%s square)"
            % (r + 1, shape),
            "prov b%d sym2%s t%d" % (n, shape[0], r + 1)]
    out = ["b%d = %s" % (n, " ".join(str(int(c)) for c in res.coeffs))]
    return 0, out, info


def _build_fusion(args, table):
    path = args.get("sub")
    if not path:
        raise DomainError("missing argument sub")
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError("cannot read subgroup table %s: %s" % (path, exc))
    sub_table = chartable.read_table(text)
    cmap = _index_list(args, "fusion")
    if len(cmap) != len(sub_table.classes):
        raise DomainError("fusion map needs one entry per class of %s"
                          % sub_table.name)
    fusion = charops.Fusion(sub=sub_table, sup=table, class_map=cmap)
    fusion.validate()
    return sub_table, fusion


def _cmd_induce(ws, args):
    _require_init(ws)
    table = _load_table(ws)
    if table.prime:
        raise DomainError("induction needs the ordinary table")
    sub_table, fusion = _build_fusion(args, table)
    r = _int_arg(args, "row") - 1
    _check_row(r, sub_table.rows, "row")
    ind = charops.induce_row(fusion, sub_table.rows[r])
    coeffs = _irr_coefficients(table, ind)
    n = _append_pool(ws, "state", LABEL_CLASS_FUNCTIONS, coeffs)
    info = ["class functions no%6d obtained by:" % n,
            "  inducing character no %d from %s" % (r + 1, sub_table.name),
            "prov c%d induce %s:t%d" % (n, sub_table.name, r + 1)]
    out = ["c%d = %s" % (n, " ".join(str(c) for c in coeffs))]
    return 0, out, info


def _cmd_restrict(ws, args):
    _require_init(ws)
    table = _load_table(ws)
    if table.prime:
        raise DomainError("restriction needs the ordinary table")
    sub_table, fusion = _build_fusion(args, table)
    r = _int_arg(args, "row") - 1
    _check_row(r, table.rows, "row")
    res = charops.restrict_row(fusion, table.rows[r])
    coeffs = _irr_coefficients(sub_table, res)
    out = ["restriction of no %d to %s: %s"
           % (r + 1, sub_table.name, " ".join(str(c) for c in coeffs))]
    return 0, out, list(out)


# --- improvement operations ------------------------------------------------


def _improve_context(ws):
    u = ws_rows(ws, "state", LABEL_PAIRING)
    if not u:
        raise DomainError("no pairing matrix stored under %d" % LABEL_PAIRING)
    return improve.ImproveContext(
        u=[list(r) for r in u],
        b_rows=[list(r) for r in ws_rows(ws, "bras", LABEL_BRAUER_POOL)],
        p_rows=[list(r) for r in ws_rows(ws, "proj", LABEL_PROJ_POOL)],
        pims=_pim_set(ws))


def _improve_pimtest(ws, args):
    ctx = _improve_context(ws)
    explicit = "columns" in args
    cols = _index_list(args, "columns", default=range(ctx.size))
    certified = []
    info = []
    for j in cols:
        if not 0 <= j < ctx.size:
            raise DomainError("column %d out of range" % (j + 1))
        if improve.pim_test(ctx, j) == "indecomposable":
            certified.append(j)
            atom = bool(ctx.events) and ctx.events[-1].kind == "atom_pim"
            info.append("projective  nr%6d in block%4d is indecomposable,"
                        % (j + 1, 1))
            info.append("  because it is an atom" if atom
                        else "  because it has no genuine proper part")
    if not certified:
        info.append("no new projectives certified")
    _store_pims(ws, ctx.pims)
    code = 3 if explicit and not certified else 0
    return code, list(info), info


def _improve_subtract(ws, args):
    ctx = _improve_context(ws)
    j0 = _int_arg(args, "column") - 1
    t = _int_arg(args, "target") - 1
    mode = args.get("mode", "indecomposable")
    _check_row(t, ctx.p_rows, "target")
    z, reduced = improve.subtract_indecomposable(
        ctx, j0, list(ctx.p_rows[t]), mode=mode)
    pool = [list(r) for r in ctx.p_rows]
    pool[t] = [int(v) for v in reduced]
    ws_write(ws, "proj", LABEL_PROJ_POOL, pool)
    info = ["subtracted %d copies of projective nr %d from projectives no %d"
            % (z, j0 + 1, t + 1)]
    return 0, list(info), info


def _improve_triangular(ws, args):
    ctx = _improve_context(ws)
    applied = improve.triangular_reduce(ctx)
    ws_write(ws, "state", LABEL_PAIRING, [list(r) for r in ctx.u])
    ws_write(ws, "proj", LABEL_PROJ_POOL, [list(r) for r in ctx.p_rows])
    info = ["projective nr %d diminished by %d copies of projective nr %d"
            % (j0 + 1, z, i + 1) for (i, j0, z) in applied]
    if not applied:
        info = ["no triangular reduction applies"]
    return 0, list(info), info


def _improve_split(ws, args):
    ctx = _improve_context(ws)
    i = _int_arg(args, "column") - 1
    if not 0 <= i < ctx.size:
        raise DomainError("column %d out of range" % (i + 1))
    res = improve.split_decomposable(ctx, i)
    if res[0] != "split":
        info = ["no split: %s" % (res[1],)]
        return 3, list(info), info
    _kind, p1, p2 = res
    ws_write(ws, "state", LABEL_PAIRING, [list(r) for r in ctx.u])
    ws_write(ws, "proj", LABEL_PROJ_POOL, [list(r) for r in ctx.p_rows])
    _store_pims(ws, ctx.pims)
    info = ["projective nr %d is decomposable:" % (i + 1),
            "  parts %s and %s" % (" ".join(str(v) for v in p1),
                                   " ".join(str(v) for v in p2))]
    return 0, list(info), info


def _improve_prune(ws, args):
    ctx = _improve_context(ws)
    admitted, discarded = improve.prune_essential(ctx)
    ws_write(ws, "proj", LABEL_PROJ_POOL,
             [list(ctx.p_rows[t]) for t in admitted])
    info = ["essential projectives: no %s"
            % " ".join(str(t + 1) for t in admitted)]
    for t in sorted(discarded):
        cert = discarded[t]
        pw = " ".join("%d*no%d" % (w, k + 1)
                      for k, w in sorted(cert["pool_weights"].items()))
        bw = " ".join("%d*bs%d" % (w, k + 1)
                      for k, w in sorted(cert["basic_weights"].items()))
        info.append("projectives no %d discarded:" % (t + 1))
        info.append("  covered by %s with basic part %s"
                    % (pw or "nothing", bw or "nothing"))
    return 0, list(info), info


def _improve_parity(ws, args):
    t_rows = ws_rows(ws, "state", LABEL_CLASS_FUNCTIONS)
    if not t_rows:
        raise DomainError("no class functions stored under %d"
                          % LABEL_CLASS_FUNCTIONS)
    degrees = [int(x) for x in str(args.get("degrees", "")).split(",") if x]
    if len(degrees) != len(t_rows):
        raise DomainError("need one degree per stored class function")
    real = _index_list(args, "real")
    trivial = _int_arg(args, "trivial", 1) - 1
    cap = _int_arg(args, "cap", 1_000_000)
    width = len(t_rows[0])
    if ws_rows(ws, "state", LABEL_PAIRING):
        ctx = _improve_context(ws)
    else:
        eye = [[1 if a == b else 0 for b in range(width)]
               for a in range(width)]
        ctx = improve.ImproveContext(u=eye)
    res = improve.fong_parity(ctx, [list(r) for r in t_rows], degrees, real,
                              p=ws.prime, trivial=trivial, cap=cap)
    if res["status"] == "noop":
        info = ["nothing to do: the parity argument applies at p = 2 only"]
        return 0, list(info), info
    if res["status"] == "unique":
        info = ["unique parity solution %s"
                % " ".join(str(x) for x in res["solutions"][0])]
        for j, j0 in res["containments"]:
            info.append("projective nr %d is contained in projective nr %d"
                        % (j + 1, j0 + 1))
        return 0, list(info), info
    info = ["parity conditions inconclusive (%s)" % res["status"]]
    return 3, list(info), info


_IMPROVE_OPS = {
    "pimtest": _improve_pimtest,
    "subtract": _improve_subtract,
    "triangular": _improve_triangular,
    "split": _improve_split,
    "prune": _improve_prune,
    "parity": _improve_parity,
}


def _cmd_improve(ws, args):
    _require_init(ws)
    op = args.get("op")
    handler = _IMPROVE_OPS.get(op)
    if handler is None:
        raise DomainError("unknown improve operation %r" % (op,))
    return handler(ws, args)


def _cmd_ilp(ws, args):
    _require_init(ws)
    if args.get("op") != "solve":
        raise DomainError("unknown ilp operation %r" % (args.get("op"),))
    label = _int_arg(args, "label")
    rec = ws_read(ws, "state", label)
    if len(rec.rows) < 2 or len(rec.rows[0]) < 2:
        raise DomainError("record %d needs an objective row [c | 0] plus "
                          "constraint rows [A | b]" % label)
    c = list(rec.rows[0][:-1])
    a_rows = [list(r[:-1]) for r in rec.rows[1:]]
    b = [r[-1] for r in rec.rows[1:]]
    res = ilp.gomory_solve(a_rows, b, c)
    info = ["status: %s" % res.status]
    if res.status == "optimum":
        info.append("value: %d" % res.value)
        info.append("x = %s" % " ".join(str(v) for v in res.x))
    elif res.reason:
        info.append("reason: %s" % res.reason)
    code = 3 if res.status == "aborted" else 0
    return code, list(info), info


def _cmd_put(ws, args):
    _require_init(ws)
    which = args.get("into", "state")
    label = _int_arg(args, "label")
    path = args.get("file")
    if not path:
        raise DomainError("missing argument file")
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError("cannot read %s: %s" % (path, exc))
    rows = intlin.parse_matrix(text, legacy=_flag(args, "legacy"))
    ws_write(ws, which, label, rows)
    info = ["record %d stored in %s: %d x %d from %s"
            % (label, which, len(rows), len(rows[0]) if rows else 0, path)]
    return 0, list(info), info


def _cmd_get(ws, args):
    _require_init(ws)
    which = args.get("into", "state")
    rec = ws_read(ws, which, _int_arg(args, "label"))
    head = "record %d in %s: %d x %d" % (rec.label, which, len(rec.rows),
                                         len(rec.rows[0]))
    out = [head] + [" ".join(str(v) for v in row) for row in rec.rows]
    return 0, out, [head]


def _cmd_status(ws, args):
    _require_init(ws)
    info = ["workspace %s mod %d" % (ws.group, ws.prime)]
    if os.path.exists(ws.table_path):
        table = _load_table(ws)
        kind = "ordinary" if table.prime == 0 else "p = %d Brauer" % table.prime
        info.append("table %s: %d %s characters"
                    % (table.name, len(table.rows), kind))
    else:
        info.append("no table imported")
    bs = ws_rows(ws, "state", LABEL_BASIC_SET)
    info.append("basic set: %s"
                % (" ".join(str(j + 1) for j in bs[0]) if bs else "none"))
    info.append("relations: %s"
                % ("stored" if ws_rows(ws, "state", LABEL_RELATIONS)
                   else "none"))
    info.append("Brauer pool: %d rows"
                % len(ws_rows(ws, "bras", LABEL_BRAUER_POOL)))
    info.append("projective pool: %d rows"
                % len(ws_rows(ws, "proj", LABEL_PROJ_POOL)))
    pims = _pim_set(ws)
    info.append("certified projectives: %s"
                % (" ".join(str(j + 1) for j in sorted(pims))
                   if pims else "none"))
    return 0, list(info), info


def _cmd_trace(ws, args):
    _require_init(ws)
    ident = args.get("id")
    if not ident:
        raise DomainError("missing argument id")
    if not os.path.exists(ws.info_path):
        raise DomainError("no info log for %s mod %d" % (ws.group, ws.prime))
    with open(ws.info_path, "r", encoding="utf-8") as fh:
        text = fh.read()
    prov = {}
    for line in text.splitlines():
        m = _PROV_RE.match(line)
        if m and m.group(1) not in prov:
            prov[m.group(1)] = m.group(2)
    out = []

    def walk(node, depth, seen):
        pad = "  " * depth
        if re.fullmatch(r"t\d+", node):
            out.append("%s%s: character no %s of the table"
                       % (pad, node, node[1:]))
            return
        if node not in prov:
            raise DomainError("no provenance recorded for %s" % node)
        out.append("%s%s: %s" % (pad, node, prov[node]))
        if node in seen:
            return
        for tok in prov[node].split():
            if re.fullmatch(r"[tbpc]\d+", tok) and tok != node:
                walk(tok, depth + 1, seen | {node})

    walk(ident, 0, frozenset())
    return 0, out, list(out)


_HANDLERS = {
    "init": _cmd_init,
    "import-table": _cmd_import_table,
    "blocks": _cmd_blocks,
    "basicset": _cmd_basicset,
    "certify": _cmd_certify,
    "atoms": _cmd_atoms,
    "tensor": _cmd_tensor,
    "symmetrize": _cmd_symmetrize,
    "induce": _cmd_induce,
    "restrict": _cmd_restrict,
    "improve": _cmd_improve,
    "ilp": _cmd_ilp,
    "put": _cmd_put,
    "get": _cmd_get,
    "status": _cmd_status,
    "trace": _cmd_trace,
}
