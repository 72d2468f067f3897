"""Management command to reproduce one comparison figure."""

from pathlib import Path

from django.conf import settings

from harvesting.figures import run_figure
from harvesting.runconfig import RunCommand

from ._base import HarvestCommand


class Command(HarvestCommand):
    help = "Write the panel CSVs and gnuplot script of figure 1-5"
    run_command = RunCommand.FIGURE

    def add_arguments(self, parser):
        parser.add_argument("figure_id", help="Figure number, 1-5")
        super().add_arguments(parser)

    def run(self, config, **options):
        out_dir = Path(config.output_path or str(settings.UDW_OUTPUT_DIR))
        self.stdout.write(f"Reproducing figure {config.figure} into {out_dir}...")

        written = run_figure(config.figure, config, out_dir)

        self.stdout.write(self.style.SUCCESS(f"Figure {config.figure} complete: {len(written)} files written"))
        for path in written:
            self.stdout.write(f"  - {path}")
