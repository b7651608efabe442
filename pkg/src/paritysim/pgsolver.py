"""Reading and writing games in the PGSolver text format.

    parity <max-id>;
    <id> <priority> <owner> <succ>(,<succ>)* ("name")?;

Owner 0 is Even, 1 is Odd.  Ids are renumbered densely in increasing order.
"""

from __future__ import annotations

import re

from .game import Owner, ParityGame

_HEADER = re.compile(r"^parity\s+(\d+)\s*;$")
_VERTEX = re.compile(
    r'^(\d+)\s+(\d+)\s+([01])(?:\s+(\d+(?:\s*,\s*\d+)*))?\s*(?:"((?:[^"\\]|\\.)*)")?\s*;$'
)


class PGSolverSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_pgsolver(text: str) -> ParityGame:
    """Parse PGSolver text.

    Syntax errors and duplicate ids raise :class:`PGSolverSyntaxError`; dead
    ends and dangling successors are left for :func:`validate_game`.
    """
    rows: dict[int, tuple] = {}
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("parity") and not rows:
            if not _HEADER.match(line):
                raise PGSolverSyntaxError(lineno, f"malformed header {line!r}")
            continue
        m = _VERTEX.match(line)
        if not m:
            raise PGSolverSyntaxError(lineno, f"cannot parse vertex line {line!r}")
        vid, pri, own, succ, name = m.groups()
        vid = int(vid)
        if vid in rows:
            raise PGSolverSyntaxError(lineno, f"duplicate vertex id {vid}")
        succs = [int(x) for x in succ.split(",")] if succ else []
        if name is not None:
            name = name.replace('\\"', '"').replace("\\\\", "\\")
        rows[vid] = (int(pri), Owner(int(own)), succs, name)

    ids = sorted(rows)
    index = {vid: i for i, vid in enumerate(ids)}
    owner, priority, successors, names = [], [], [], []
    for vid in ids:
        pri, own, succs, name = rows[vid]
        owner.append(own)
        priority.append(pri)
        # unknown targets keep an out-of-range index so validation reports them
        successors.append(tuple(index.get(u, u if u >= len(ids) else len(ids) + u)
                                for u in succs))
        names.append(name)
    return ParityGame(tuple(owner), tuple(priority), tuple(successors), tuple(names))


def write_pgsolver(g: ParityGame) -> str:
    lines = [f"parity {max(g.n - 1, 0)};"]
    for v in g.vertices:
        line = f"{v} {g.priority[v]} {int(g.owner[v])} {','.join(map(str, g.successors[v]))}"
        name = g.names[v]
        if name is not None:
            escaped = name.replace("\\", "\\\\").replace('"', '\\"')
            line += f' "{escaped}"'
        lines.append(line + ";")
    return "\n".join(lines) + "\n"


def read_game(path) -> ParityGame:
    with open(path, encoding="utf-8") as fh:
        return parse_pgsolver(fh.read())


def write_game(g: ParityGame, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(write_pgsolver(g))
