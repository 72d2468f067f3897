"""Management command to locate the critical separation between accelerated and thermal pairs."""

from harvesting.analysis import find_l_crit, l_crit_curve
from harvesting.exporters import write_roots
from harvesting.runconfig import RunCommand

from ._base import HarvestCommand


class Command(HarvestCommand):
    help = "Find L_crit at --rate, or along --grid of rates"
    run_command = RunCommand.LCRIT

    def run(self, config, **options):
        if config.grid:
            rates = list(config.grid)
            results = l_crit_curve(config.det, rates, tol=config.quad_tol, threads=config.threads)
        else:
            rates = [config.rate]
            results = [find_l_crit(config.det, config.rate, tol=config.quad_tol)]
        if results[0] is None and len(results) == 1:
            self.stderr.write(self.style.WARNING("accelerated detectors never out-harvest thermal ones here"))
        self.emit(config, lambda stream: write_roots(rates, results, stream, config.format))
