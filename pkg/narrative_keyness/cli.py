"""
The ``narrative-keyness`` console script. Subcommands are the app's
management commands, with hyphens accepted in their names:

    narrative-keyness ingest-check --input dumps/gab.jsonl:gab
    narrative-keyness run --config study.json --output-dir out/

Settings come from DJANGO_SETTINGS_MODULE, narrative_keyness.settings if
unset.
"""
import os
import sys


def main(argv=None):
    argv = list(sys.argv if argv is None else argv)
    os.environ.setdefault('DJANGO_SETTINGS_MODULE',
                          'narrative_keyness.settings')
    if len(argv) > 1 and not argv[1].startswith('-'):
        argv[1] = argv[1].replace('-', '_')
    from django.core.management import execute_from_command_line
    execute_from_command_line(argv)


if __name__ == '__main__':
    main()
