"""Burmeister ``.cxt`` reading and writing.

Layout::

    B
    <title, may be empty>
    <number of objects>
    <number of attributes>
    <optional blank line>
    <object names, one per line>
    <attribute names, one per line>
    <one row of marks per object: X or x for a cross, . for a blank>
"""

from __future__ import annotations

from .context import ContractError, FormalContext, bits


class CxtParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_cxt(text: str) -> FormalContext:
    lines = [ln.rstrip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    pos = 0

    def take(what: str) -> str:
        nonlocal pos
        if pos >= len(lines):
            raise CxtParseError(pos + 1, f"unexpected end of file, expected {what}")
        pos += 1
        return lines[pos - 1]

    def count(what: str) -> int:
        raw = take(what)
        try:
            value = int(raw.strip())
        except ValueError:
            raise CxtParseError(pos, f"expected {what}, got {raw!r}") from None
        if value < 1:
            raise CxtParseError(pos, f"{what} must be positive, got {value}")
        return value

    if take("header 'B'").strip() != "B":
        raise CxtParseError(1, "header must be 'B'")
    take("title line")
    n = count("object count")
    m = count("attribute count")
    if pos < len(lines) and lines[pos] == "":
        pos += 1

    def names(k: int, kind: str) -> list[str]:
        out: list[str] = []
        seen: set[str] = set()
        for _ in range(k):
            name = take(f"{kind} name")
            if name in seen:
                raise CxtParseError(pos, f"duplicate {kind} name {name!r}")
            seen.add(name)
            out.append(name)
        return out

    objects = names(n, "object")
    attributes = names(m, "attribute")
    rows = []
    for _ in range(n):
        row = take("incidence row")
        if len(row) != m:
            raise CxtParseError(pos, f"row length {len(row)} != {m}")
        bad = set(row) - {"X", "x", "."}
        if bad:
            raise CxtParseError(pos, f"illegal mark {sorted(bad)[0]!r}")
        rows.append(bits(i for i, ch in enumerate(row) if ch in "Xx"))
    if pos < len(lines):
        raise CxtParseError(pos + 1, f"{n} rows expected, found extra content")
    try:
        return FormalContext(tuple(objects), tuple(attributes), tuple(rows))
    except ContractError as exc:  # pragma: no cover - counts and names already checked
        raise CxtParseError(pos, str(exc)) from None


def write_cxt(ctx: FormalContext, title: str = "") -> str:
    for label in ctx.object_labels + ctx.attribute_labels:
        if not label or label != label.rstrip() or "\n" in label or "\r" in label:
            raise ContractError(f"label {label!r} cannot be written to a .cxt line")
    out = ["B", title, str(ctx.n_objects), str(ctx.n_attributes), ""]
    out += ctx.object_labels
    out += ctx.attribute_labels
    m = ctx.n_attributes
    out += ["".join("X" if row >> a & 1 else "." for a in range(m)) for row in ctx.rows]
    return "\n".join(out) + "\n"
