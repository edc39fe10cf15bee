from narrative_keyness.management.commands._base import KeynessCommand
from narrative_keyness.pipeline import run_pipeline


class Command(KeynessCommand):
    help = ('Run the full pipeline and write the timeline, domain, keyness '
            'and run summary reports')

    def handle_run(self, run_config, **options):
        summary = run_pipeline(run_config)
        self.stdout.write('{} records read, {} rejected, {} filtered out, {} '
                          'excluded by language, {} processed'.format(
                              summary.records_read, summary.rejected,
                              summary.filtered_out, summary.language_excluded,
                              summary.processed))
        for name in summary.skipped_corpora:
            self.stderr.write('Skipped corpus {}: not enough nonempty '
                              'windows'.format(name))
        self.report(summary)
