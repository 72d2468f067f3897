"""Management command to locate the maximum harvesting separation."""

from harvesting.analysis import find_l_max, l_max_curve
from harvesting.exporters import write_roots
from harvesting.runconfig import RunCommand

from ._base import HarvestCommand


class Command(HarvestCommand):
    help = "Find L_max at --rate, or along --grid of rates"
    run_command = RunCommand.LMAX

    def run(self, config, **options):
        if config.grid:
            rates = list(config.grid)
            results = l_max_curve(config.scenario_kind, config.det, rates, tol=config.quad_tol, threads=config.threads)
        else:
            rates = [config.rate]
            results = [find_l_max(config.scenario_kind, config.det, config.rate, tol=config.quad_tol)]
        self.emit(config, lambda stream: write_roots(rates, results, stream, config.format))
