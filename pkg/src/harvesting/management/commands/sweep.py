"""Management command to sweep the separation or the rate of one scenario."""

from harvesting.analysis import SweepAxis, SweepSpec, run_sweep
from harvesting.exporters import write_rows
from harvesting.runconfig import RunCommand

from ._base import HarvestCommand


class Command(HarvestCommand):
    help = "Evaluate one scenario over a grid of separations (or of rates when --sep is given)"
    run_command = RunCommand.SWEEP

    def run(self, config, **options):
        if config.sweeps_separation:
            axis, fixed = SweepAxis.SEPARATION, config.rate
        else:
            axis, fixed = SweepAxis.RATE, config.separation
        spec = SweepSpec(config.scenario_kind, config.det, axis, config.grid, fixed, config.quad_tol)
        rows = run_sweep(spec, threads=config.threads)
        self.emit(config, lambda stream: write_rows(rows, stream, config.format))
