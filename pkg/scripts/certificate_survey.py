"""Coefficient certificates versus grid checks on random hypothesis-satisfying draws.

For each draw this records whether ``w_{n,k}`` is nondecreasing in ``k``,
whether ``C_n = A_n/B_n`` is nondecreasing, and what the grid harness says on
``[0, 0.99]`` and, for entire series, on ``[0, 100]``.

    python scripts/certificate_survey.py --draws 100 --out results
"""

from __future__ import annotations

import argparse
import csv
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from hyperratio import Target, certify_coeff_monotone, default_grid, grid_monotone_check
from hyperratio.sampling import theorem1_draw, theorem2_draw
from hyperratio.turan_suite import AbcVecParams


@dataclass(frozen=True)
class SurveyConfig:
    draws: int = 100
    depth: int = 64
    points: int = 65
    seed: int = 5
    out: Path = Path("results")


def survey_row(kind: str, p: AbcVecParams, depth: int, points: int) -> dict:
    cert = certify_coeff_monotone(p.a, p.b, p.c, depth)
    target = Target.hpq(p.a, p.b, p.c)
    unit = grid_monotone_check(target, default_grid("0.99", points)).verdict
    wide = grid_monotone_check(target, default_grid(100, points)).verdict if p.p <= p.q else "n/a"
    v = cert.first_violation
    return {
        "family": kind,
        "a": ",".join(map(str, p.a)),
        "b": ",".join(map(str, p.b)),
        "c": ",".join(map(str, p.c)),
        "w_monotone": cert.supporting[0].holds,
        "C_monotone": cert.holds,
        "C_first_drop": "" if v is None else v.index,
        "grid_0_0.99": unit,
        "grid_0_100": wide,
    }


def run(cfg: SurveyConfig) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(cfg.seed)
    rows = []
    for _ in range(cfg.draws):
        rows.append(survey_row("scalar", theorem1_draw(rng).as_vector(), cfg.depth, cfg.points))
    for q in (2, 3):
        for _ in range(cfg.draws // 2):
            rows.append(survey_row(f"vector q={q}", theorem2_draw(rng, q), cfg.depth, cfg.points))
    path = cfg.out / "certificate_survey.csv"
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    for family in dict.fromkeys(r["family"] for r in rows):
        sub = [r for r in rows if r["family"] == family]
        tally = Counter((r["w_monotone"], r["C_monotone"], r["grid_0_0.99"], r["grid_0_100"]) for r in sub)
        print(f"{family}: {len(sub)} draws")
        for (w, c, unit, wide), k in sorted(tally.items(), key=lambda t: -t[1]):
            print(f"  {k:4d}  w monotone {w!s:5s}  C monotone {c!s:5s}  [0,0.99] {unit:12s}  [0,100] {wide}")
    print(f"wrote {path}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=SurveyConfig.draws)
    ap.add_argument("--depth", type=int, default=SurveyConfig.depth)
    ap.add_argument("--points", type=int, default=SurveyConfig.points)
    ap.add_argument("--seed", type=int, default=SurveyConfig.seed)
    ap.add_argument("--out", type=Path, default=SurveyConfig.out)
    args = ap.parse_args()
    run(SurveyConfig(args.draws, args.depth, args.points, args.seed, args.out))


if __name__ == "__main__":
    main()
