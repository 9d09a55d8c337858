import math
import os

from django.conf import settings

from import_export import fields, resources, widgets


class FloatTextWidget(widgets.Widget):
    """Renders floats with a fixed format so CSV bundles are byte-stable."""

    def __init__(self, fmt=None):
        self.fmt = fmt

    def clean(self, value, row=None, **kwargs):
        if value in (None, ''):
            return None
        return float(value)

    def render(self, value, obj=None, **kwargs):
        if value is None:
            return ''
        value = float(value)
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        fmt = self.fmt or getattr(settings, 'LAB_CSV_FLOAT_FORMAT', '.12g')
        return format(value + 0.0, fmt)


class IntegerTextWidget(widgets.Widget):
    def clean(self, value, row=None, **kwargs):
        if value in (None, ''):
            return None
        return int(value)

    def render(self, value, obj=None, **kwargs):
        if value is None:
            return ''
        return str(int(value))


class BooleanTextWidget(widgets.Widget):
    def clean(self, value, row=None, **kwargs):
        return str(value).lower() in ('true', '1')

    def render(self, value, obj=None, **kwargs):
        if value is None:
            return ''
        return 'true' if value else 'false'


def float_field(name):
    return fields.Field(attribute=name, column_name=name,
                        widget=FloatTextWidget())


def int_field(name):
    return fields.Field(attribute=name, column_name=name,
                        widget=IntegerTextWidget())


def text_field(name):
    return fields.Field(attribute=name, column_name=name)


def bool_field(name):
    return fields.Field(attribute=name, column_name=name,
                        widget=BooleanTextWidget())


class RowResource(resources.Resource):
    """
    Base for result tables: rows are plain objects (dataclasses), columns
    are declared fields in declaration order.
    """

    @classmethod
    def to_dataset(cls, rows):
        return cls().export(list(rows))


def render_csv(dataset):
    return dataset.export('csv', lineterminator='\n')


def write_csv(dataset, directory, filename):
    path = os.path.join(directory, filename)
    with open(path, 'w', encoding='utf-8', newline='') as fh:
        fh.write(render_csv(dataset))
    return path
