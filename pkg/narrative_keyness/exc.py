from narrative_keyness.constants import (
    EXIT_CONFIG_ERROR, EXIT_SCHEMA_ERROR, EXIT_NO_DATA,
)


class NarrativeKeynessException(Exception):
    exit_code = 1

    def __init__(self, code='', message=''):
        """
        :param code: A short string that can be checked against, such as
            'SchemaViolation'
        :param message: A longer string that describes the problem and action
            that should be taken.
        """
        super().__init__(code, message)
        self.code = code or 'UnexpectedError'
        self.message = message or (
            'Narrative Keyness encountered an unexpected error'
        )

    def __str__(self):
        return '{}: {}'.format(self.code, self.message)

    def __repr__(self):
        return str(self)


class PostValidationError(NarrativeKeynessException):
    """A post failed validation. ``field`` names the offending field."""
    exit_code = EXIT_SCHEMA_ERROR

    def __init__(self, field='', **kwargs):
        super().__init__(**kwargs)
        self.field = field


class MalformedTimestamp(PostValidationError):
    def __init__(self, field='timestamp', value=''):
        super().__init__(
            field=field, code='MalformedTimestamp',
            message='Field "{}" is not a valid UTC instant: {!r}'.format(
                field, value))
        self.value = value


class EmptyId(PostValidationError):
    def __init__(self, field='id'):
        super().__init__(field=field, code='EmptyId',
                         message='Field "{}" must not be empty'.format(field))


class InvalidHashtag(PostValidationError):
    def __init__(self, field='hashtags', value=''):
        super().__init__(
            field=field, code='InvalidHashtag',
            message='Hashtag {!r} contains "#" or whitespace'.format(value))
        self.value = value


class EmptyInput(NarrativeKeynessException):
    exit_code = EXIT_NO_DATA

    def __init__(self, message=''):
        super().__init__(code='EmptyInput',
                         message=message or 'No posts were given')


class FileNotFound(NarrativeKeynessException):
    exit_code = EXIT_SCHEMA_ERROR

    def __init__(self, path):
        super().__init__(code='FileNotFound',
                         message='No such file: "{}"'.format(path))
        self.path = path


class SchemaViolation(NarrativeKeynessException):
    """
    A dump record does not match its declared schema.
    :param line: 1-based line number of the record in its file
    :param field: The offending field, or None if the line is not a record
    """
    exit_code = EXIT_SCHEMA_ERROR

    def __init__(self, line, field=None, detail='', path=''):
        self.line = line
        self.field = field
        self.path = path
        where = 'line {}'.format(line)
        if path:
            where = '{} {}'.format(path, where)
        message = '{}, field "{}"'.format(where, field) if field else where
        if detail:
            message = '{}: {}'.format(message, detail)
        super().__init__(code='SchemaViolation', message=message)


class DuplicateId(NarrativeKeynessException):
    exit_code = EXIT_SCHEMA_ERROR

    def __init__(self, line, post_id='', path=''):
        self.line = line
        self.post_id = post_id
        self.path = path
        super().__init__(
            code='DuplicateId',
            message='{}line {}: post id {!r} was already seen'.format(
                '{} '.format(path) if path else '', line, post_id))


class NoTaggerForLanguage(NarrativeKeynessException):
    exit_code = EXIT_CONFIG_ERROR

    def __init__(self, language):
        super().__init__(
            code='NoTaggerForLanguage',
            message='No tagger is registered for language "{}" and the '
                    'document carries no tags. Add it to '
                    'settings.KEYNESS_TAGGERS'.format(language))
        self.language = language


class KeynessMathError(NarrativeKeynessException):
    """Invalid input to the Log Ratio metric"""


class BothZero(KeynessMathError):
    def __init__(self):
        super().__init__(code='BothZero',
                         message='Log Ratio is undefined when the item is '
                                 'absent from both corpora')


class NonpositiveCorpusSize(KeynessMathError):
    def __init__(self, n1, n2):
        super().__init__(
            code='NonpositiveCorpusSize',
            message='Corpus sizes must be positive, got n1={} n2={}'.format(
                n1, n2))
        self.n1, self.n2 = n1, n2


class InvalidZeroAdjust(KeynessMathError):
    def __init__(self, zero_adjust):
        super().__init__(
            code='InvalidZeroAdjust',
            message='zero_adjust must be > 0, got {}'.format(zero_adjust))
        self.zero_adjust = zero_adjust


class InsufficientWindows(NarrativeKeynessException):
    exit_code = EXIT_NO_DATA

    def __init__(self, found, corpus=''):
        super().__init__(
            code='InsufficientWindows',
            message='Temporal keyness needs at least 2 nonempty windows{}, '
                    'found {}'.format(
                        ' for corpus "{}"'.format(corpus) if corpus else '',
                        found))
        self.found = found
        self.corpus = corpus


class InvalidRunConfig(NarrativeKeynessException):
    exit_code = EXIT_CONFIG_ERROR

    def __init__(self, field, message=''):
        super().__init__(code='InvalidRunConfig',
                         message='"{}": {}'.format(field, message))
        self.field = field


class NoData(NarrativeKeynessException):
    exit_code = EXIT_NO_DATA

    def __init__(self, message=''):
        super().__init__(code='NoData', message=message or (
            'No posts remained after filtering, nothing to report'))


class PipelineStageError(NarrativeKeynessException):
    """Wraps an error raised by a pipeline stage with the stage name."""

    def __init__(self, stage, error):
        super().__init__(code=getattr(error, 'code', type(error).__name__),
                         message='Stage "{}" failed: {}'.format(
                             stage, getattr(error, 'message', error)))
        self.stage = stage
        self.error = error
        self.exit_code = getattr(error, 'exit_code', 1)
