from narrative_keyness.management.commands._base import KeynessCommand
from narrative_keyness.pipeline import run_pipeline, REPORT_KEYNESS


class Command(KeynessCommand):
    help = ('Rank the key nouns and verbs of every time window against the '
            'windows before it, per corpus')

    def handle_run(self, run_config, **options):
        summary = run_pipeline(run_config, reports=(REPORT_KEYNESS,))
        for corpus in summary.corpora:
            self.stdout.write('{}: {} posts, {} tokens, {} windows{}'.format(
                corpus.name, corpus.posts, corpus.tokens, corpus.windows,
                ' (skipped)' if corpus.skipped else ''))
        self.report(summary)
