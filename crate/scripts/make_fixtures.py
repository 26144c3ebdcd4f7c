#!/usr/bin/env python3
"""Write offline b-file fixtures for the six mapped OEIS sequences.

Terms come from plain integer recurrences, independent of the Rust code.
Replace a file with the real OEIS b-file by running
`identity-forge oeis-check --family <name>` with network access.
"""
import pathlib
import sys

SEQUENCES = {
    "A000045": ("Fibonacci numbers", 1, 1, 0, 1),
    "A000032": ("Lucas numbers", 1, 1, 2, 1),
    "A000129": ("Pell numbers", 2, 1, 0, 1),
    "A001333": ("Pell-Lucas numbers halved (numerators of continued fraction convergents to sqrt(2))", 2, 1, 1, 1),
    "A006190": ("a(n) = 3a(n-1) + a(n-2)", 3, 1, 0, 1),
    "A015530": ("a(n) = 4a(n-1) + 3a(n-2)", 4, 3, 0, 1),
}

COUNT = 60


def terms(c1, c2, x0, x1, count):
    out = [x0, x1]
    while len(out) < count:
        out.append(c1 * out[-1] + c2 * out[-2])
    return out[:count]


def main(dest):
    dest.mkdir(parents=True, exist_ok=True)
    for oeis_id, (title, c1, c2, x0, x1) in SEQUENCES.items():
        lines = [
            f"# {oeis_id} {title}",
            "# b-file format; generated locally from the recurrence for offline use",
        ]
        lines += [f"{n} {v}" for n, v in enumerate(terms(c1, c2, x0, x1, COUNT))]
        (dest / f"{oeis_id}.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures"))
