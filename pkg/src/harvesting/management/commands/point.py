"""Management command to evaluate one scenario at one parameter point."""

from harvesting.exporters import write_outcome
from harvesting.harvest import evaluate_scenario
from harvesting.runconfig import RunCommand

from ._base import HarvestCommand


class Command(HarvestCommand):
    help = "Print P, |X| and the concurrence of one detector pair"
    run_command = RunCommand.POINT

    def run(self, config, **options):
        outcome = evaluate_scenario(config.det, config.scenario(), tol=config.quad_tol)
        self.emit(config, lambda stream: write_outcome(outcome, config.separation, stream, config.format))
