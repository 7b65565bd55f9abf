"""verify-reproducing: K f = f for holomorphic monomials at interior points."""

from loguru import logger

from app.commands.common import CommandContext, Outcome
from app.models.schemas import ReproducingRow
from app.utils.config import RunConfig
from app.utils.reports import render_table
from domains.geometry.ellipsoid import Ellipsoid
from domains.kernel.clf import REPRODUCING_FAMILY, clf_reproducing_check


def cmd_verify_reproducing(cfg: RunConfig, ctx: CommandContext) -> Outcome:
    section = cfg.reproducing
    grid = cfg.grids.reproducing
    rows: list[ReproducingRow] = []

    for m1, m2 in section.ellipsoids:
        E = Ellipsoid(m1, m2)
        for point in section.points:
            z = (complex(point[0], point[1]), complex(point[2], point[3]))
            for name in REPRODUCING_FAMILY:
                value, expected, error = clf_reproducing_check(E, z, name, grid)
                rows.append(
                    ReproducingRow(
                        ellipsoid=E.label,
                        z=list(point),
                        f=name,
                        value=[value.real, value.imag],
                        expected=[expected.real, expected.imag],
                        error=error,
                    )
                )
        logger.info(f"reproducing checks done for {E.label}")

    render_table(
        "Reproducing property",
        ["ellipsoid", "z", "f", "error"],
        [(r.ellipsoid, str(tuple(r.z)), r.f, r.error) for r in rows],
    )

    worst = max(r.error for r in rows)
    outcome = Outcome(metrics={"grid": grid.model_dump(mode="json"), "max_error": worst, "rows": [r.model_dump() for r in rows]})
    for r in rows:
        outcome.check(
            r.error < section.max_error,
            f"K({r.f}) at z={tuple(r.z)} on {r.ellipsoid}: error {r.error:.3e} >= {section.max_error:g}",
        )
    return outcome
