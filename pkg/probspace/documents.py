"""
YAML documents for setting-indexed models.

    sources:
    - {label: S1, weight: 0.5}
    - {label: S2, weight: 0.5}
    settings:
    - mu_deg: 0.0
      nu_deg: 45.0
      table:
      - {source: S1, out1: up, out2: up, p: 0.0366116523516815}
      ...                                  # 4 entries per source

Angles are degrees rounded to 12 significant digits; probabilities are
written with their shortest round-tripping representation.
"""
import numpy as np
import yaml

from lab_helpers.exceptions import LabError, ModelDocumentError
from .families import LABELS, OUTCOME_INDEX, SettingIndexedModel, SettingPair
from .serializers import ModelDocumentSerializer
from .space import EXACT_TOLERANCE


def model_to_document(model):
    settings = []
    for setting in model.settings:
        table = model.table(setting)
        entries = []
        for i, source in enumerate(model.sources):
            for out1 in LABELS:
                for out2 in LABELS:
                    entries.append({
                        'source': source, 'out1': out1, 'out2': out2,
                        'p': float(table[i, OUTCOME_INDEX[out1],
                                         OUTCOME_INDEX[out2]]),
                    })
        settings.append({'mu_deg': setting.mu_deg,
                         'nu_deg': setting.nu_deg,
                         'table': entries})
    return {
        'sources': [{'label': source, 'weight': float(weight)}
                    for source, weight in zip(model.sources,
                                              model.source_weights)],
        'settings': settings,
    }


def dump_model(model):
    return yaml.safe_dump(model_to_document(model), sort_keys=False,
                          default_flow_style=None)


def model_from_document(document):
    serializer = ModelDocumentSerializer(data=document)
    if not serializer.is_valid():
        raise ModelDocumentError(serializer.errors)
    data = serializer.validated_data
    sources = [s['label'] for s in data['sources']]
    weights = np.array([s['weight'] for s in data['sources']])
    tables = {}
    for setting_data in data['settings']:
        setting = SettingPair.from_degrees(setting_data['mu_deg'],
                                           setting_data['nu_deg'])
        if setting in tables:
            raise ModelDocumentError('duplicate setting %s' % setting)
        table = np.zeros((len(sources), 2, 2))
        for entry in setting_data['table']:
            table[sources.index(entry['source']),
                  OUTCOME_INDEX[entry['out1']],
                  OUTCOME_INDEX[entry['out2']]] = entry['p']
        if np.max(np.abs(table.sum(axis=(1, 2)) - weights)) > \
                EXACT_TOLERANCE:
            raise ModelDocumentError(
                'source weights disagree with the table of %s' % setting)
        tables[setting] = table
    try:
        return SettingIndexedModel(tables, sources)
    except LabError as exc:
        raise ModelDocumentError(str(exc))


def load_model(text):
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ModelDocumentError('invalid YAML: %s' % exc)
    if not isinstance(document, dict):
        raise ModelDocumentError('model document must be a mapping')
    return model_from_document(document)
