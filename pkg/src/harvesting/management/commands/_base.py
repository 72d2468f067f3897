"""Shared argument handling and exit-code mapping for the harvesting commands."""

import io
import logging
from contextlib import contextmanager
from pathlib import Path

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from harvesting.exceptions import AccuracyError, ConfigParseError, ContractError, DomainError, HarvestError
from harvesting.runconfig import RunCommand, RunConfig, parse_config

logger = logging.getLogger(__name__)

EXIT_ERROR = 1
EXIT_ACCURACY = 2
EXIT_DOMAIN = 3
EXIT_IO = 4


@contextmanager
def exit_codes():
    """Translate library failures into ``CommandError`` with the matching return code."""
    try:
        yield
    except AccuracyError as exc:
        raise CommandError(f"accuracy target not reached: {exc}", returncode=EXIT_ACCURACY) from exc
    except ValidationError as exc:
        fields = "; ".join(f"{key}: {', '.join(messages)}" for key, messages in exc.message_dict.items())
        raise CommandError(f"invalid configuration: {fields}", returncode=EXIT_DOMAIN) from exc
    except (DomainError, ContractError, ConfigParseError) as exc:
        raise CommandError(str(exc), returncode=EXIT_DOMAIN) from exc
    except HarvestError as exc:
        raise CommandError(str(exc), returncode=EXIT_ERROR) from exc
    except OSError as exc:
        raise CommandError(f"I/O error: {exc}", returncode=EXIT_IO) from exc


class HarvestCommand(BaseCommand):
    """Base for the run commands; subclasses set ``run_command`` and implement ``run``."""

    run_command: RunCommand

    def add_arguments(self, parser):
        parser.add_argument("--scenario", help="parallel, antiparallel, perpendicular, thermal or vacuum")
        parser.add_argument("--gap", help="Energy gap Ωσ")
        parser.add_argument("--rate", help="Acceleration aσ; thermal runs use T = a/2π")
        parser.add_argument("--sep", help="Separation L/σ")
        parser.add_argument("--coupling", help="Coupling λ (default 1)")
        parser.add_argument("--grid", help="start:stop:step, inclusive")
        parser.add_argument("--out", help="Output file (output directory for figure)")
        parser.add_argument("--format", help="csv or json")
        parser.add_argument("--tol", help="Quadrature tolerance")
        parser.add_argument("--threads", help="Worker processes")
        parser.add_argument("--config", help="Flat key = value config file")

    def handle(self, *args, **options):
        with exit_codes():
            config = parse_config(options.get("config"), options, self.run_command, figure=options.get("figure_id"))
            self.run(config, **options)

    def run(self, config: RunConfig, **options):
        raise NotImplementedError

    def emit(self, config: RunConfig, render) -> None:
        """Render into a buffer first so nothing is written when evaluation fails."""
        buffer = io.StringIO()
        render(buffer)
        if config.output_path is None:
            self.stdout.write(buffer.getvalue(), ending="")
            return
        path = Path(config.output_path)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(buffer.getvalue())
        logger.info("Wrote %s", path)
        self.stderr.write(self.style.SUCCESS(f"Wrote {path}"))
