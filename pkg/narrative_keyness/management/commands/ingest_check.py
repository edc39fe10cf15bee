from django.core.management.base import CommandError

from narrative_keyness.constants import EXIT_SCHEMA_ERROR
from narrative_keyness.management.commands._base import KeynessCommand
from narrative_keyness.pipeline import ingest


class Command(KeynessCommand):
    help = ('Validate dumps against their schema and list every rejected '
            'record. Exits with status 3 if any record was rejected.')

    def handle_run(self, run_config, **options):
        parsed = ingest(run_config)
        for rejected in parsed.rejected:
            self.stderr.write(str(rejected))
        self.stdout.write('{} records read, {} valid posts, {} rejected'.format(
            parsed.records_read, len(parsed.posts), len(parsed.rejected)))
        if parsed.rejected:
            raise CommandError('{} records were rejected'.format(
                len(parsed.rejected)), returncode=EXIT_SCHEMA_ERROR)
