from narrative_keyness.management.commands._base import KeynessCommand
from narrative_keyness.pipeline import run_pipeline, REPORT_TIMELINE


class Command(KeynessCommand):
    help = 'Write post volume per time window and group to timeline.csv'

    def handle_run(self, run_config, **options):
        summary = run_pipeline(run_config, reports=(REPORT_TIMELINE,))
        for group, count in summary.group_totals:
            self.stdout.write('{}: {}'.format(group, count))
        self.report(summary)
