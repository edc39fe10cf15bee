from narrative_keyness.management.commands._base import KeynessCommand
from narrative_keyness.pipeline import run_pipeline, REPORT_DOMAINS


class Command(KeynessCommand):
    help = ('Write the most shared URL domains of the language filtered posts '
            'to domains.csv')

    def handle_run(self, run_config, **options):
        summary = run_pipeline(run_config, reports=(REPORT_DOMAINS,))
        self.stdout.write('{} of {} processed posts share a URL'.format(
            summary.url_posts, summary.processed))
        self.report(summary)
