from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from narrative_keyness.cli import main
from narrative_keyness.textprep import load_profile
from tests import mocks


def run_command(name, *args, **options):
    out, err = StringIO(), StringIO()
    call_command(name, *args, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


def test_run_command(tmp_path):
    out, err = run_command('run', config=str(mocks.CONFIG),
                           output_dir=str(tmp_path))
    assert ('60 records read, 0 rejected, 0 filtered out, 1 excluded by '
            'language, 59 processed') in out
    assert 'Wrote run_summary.txt' in out
    assert err == ''
    assert (tmp_path / 'keyness_gab.txt').exists()


def test_timeline_command(tmp_path):
    out, _ = run_command('timeline', config=str(mocks.CONFIG),
                         output_dir=str(tmp_path))
    assert 'wagner: 6' in out.splitlines()
    assert [p.name for p in tmp_path.iterdir()] == ['timeline.csv']


def test_timeline_command_group_by_hashtag(tmp_path):
    out, _ = run_command('timeline', inputs=['{}:gab'.format(mocks.GAB_MINI)],
                         output_dir=str(tmp_path), group_by='hashtag')
    assert 'wagner: 8' in out.splitlines()


def test_domains_command(tmp_path):
    out, _ = run_command('domains', config=str(mocks.CONFIG),
                         output_dir=str(tmp_path))
    assert 'processed posts share a URL' in out
    assert (tmp_path / 'domains.csv').read_bytes() == (
        mocks.GOLDEN / 'domains.csv').read_bytes()


def test_keyness_command(tmp_path):
    out, _ = run_command('keyness', config=str(mocks.CONFIG),
                         output_dir=str(tmp_path), top_n=3)
    assert 'Wrote keyness_telegram-ukraine.csv' in out
    assert not (tmp_path / 'timeline.csv').exists()


def test_ingest_check_clean_dump():
    out, err = run_command('ingest_check',
                           inputs=['{}:gab'.format(mocks.GAB_MINI)])
    assert '30 records read, 30 valid posts, 0 rejected' in out
    assert err == ''


def test_ingest_check_reports_rejections():
    out, err = StringIO(), StringIO()
    with pytest.raises(CommandError) as ce:
        call_command('ingest_check', inputs=['{}:gab'.format(mocks.GAB_BAD)],
                     stdout=out, stderr=err)
    assert ce.value.returncode == 3
    assert '6 records read, 2 valid posts, 4 rejected' in out.getvalue()
    assert 'DuplicateId' in err.getvalue()


def test_config_error_exit_code():
    with pytest.raises(CommandError) as ce:
        run_command('run', inputs=['missing.jsonl:gab'])
    assert ce.value.returncode == 2
    assert 'InvalidRunConfig' in str(ce.value)


def test_no_data_exit_code(tmp_path):
    with pytest.raises(CommandError) as ce:
        run_command('run', config=str(mocks.CONFIG), output_dir=str(tmp_path),
                    date_from='2024-01-01', date_to='2024-02-01')
    assert ce.value.returncode == 4
    assert list(tmp_path.iterdir()) == []


def test_build_profile(tmp_path):
    sample = tmp_path / 'sample.txt'
    sample.write_text('Wagner enters Rostov. Prigozhin halts the march.',
                      encoding='utf-8')
    output = tmp_path / 'xx.profile'
    out, _ = run_command('build_profile', 'XX', str(sample),
                         output=str(output), top_k=5)
    assert 'Wrote {}'.format(output) in out
    profile = load_profile(str(output))
    assert profile.language == 'xx'
    assert profile.size == 5


@pytest.mark.parametrize('content, top_k', [
    (None, 5),
    ('!!! 123', 5),
    ('enough text here', 0),
])
def test_build_profile_errors(tmp_path, content, top_k):
    sample = tmp_path / 'sample.txt'
    if content is not None:
        sample.write_text(content, encoding='utf-8')
    with pytest.raises(CommandError) as ce:
        run_command('build_profile', 'xx', str(sample),
                    output=str(tmp_path / 'xx.profile'), top_k=top_k)
    assert ce.value.returncode == 2


def test_cli_accepts_hyphenated_commands(capsys):
    main(['narrative-keyness', 'ingest-check', '--input',
          '{}:telegram'.format(mocks.TELEGRAM_MINI)])
    assert '30 records read, 30 valid posts' in capsys.readouterr().out


def test_cli_exit_status(capsys):
    with pytest.raises(SystemExit) as se:
        main(['narrative-keyness', 'ingest-check', '--input',
              '{}:gab'.format(mocks.GAB_BAD)])
    assert se.value.code == 3


def test_cli_run_with_config_file(tmp_path, capsys):
    main(['narrative-keyness', 'run', '--config', str(mocks.CONFIG),
          '--output-dir', str(tmp_path), '--top-n', '3'])
    out = capsys.readouterr().out
    assert '59 processed' in out
    assert 'Wrote keyness_gab.csv' in out
    assert (tmp_path / 'run_summary.txt').exists()
