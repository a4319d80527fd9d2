"""Collects one PASS/FAIL line per acceptance criterion."""

LINES: list[str] = []


def record(number: int, title: str, ok: bool, elapsed: float, detail: str = "") -> str:
    line = f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title} ({elapsed:.1f}s){': ' + detail if detail else ''}"
    LINES.append(line)
    print(line)
    return line
