import logging
from django.template import Library

from narrative_keyness.constants import (
    LOG_RATIO_DISPLAY_FORMAT, RPM_DISPLAY_FORMAT,
)

register = Library()

log = logging.getLogger(__name__)


@register.filter
def log_ratio(value):
    return LOG_RATIO_DISPLAY_FORMAT.format(value)


@register.filter
def rpm(value):
    return RPM_DISPLAY_FORMAT.format(value)


@register.filter
def pad(cell):
    """Align a table cell, a dict with 'text', 'width' and 'right' keys"""
    text = str(cell['text'])
    if cell.get('right'):
        return text.rjust(cell['width'])
    return text.ljust(cell['width'])
