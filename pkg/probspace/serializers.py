from rest_framework import serializers

from spin.states import SPIN_LABELS


class SourceSerializer(serializers.Serializer):
    label = serializers.CharField(max_length=50)
    weight = serializers.FloatField(min_value=0.0, max_value=1.0)


class TableEntrySerializer(serializers.Serializer):
    source = serializers.CharField(max_length=50)
    out1 = serializers.ChoiceField(choices=SPIN_LABELS)
    out2 = serializers.ChoiceField(choices=SPIN_LABELS)
    p = serializers.FloatField(min_value=0.0, max_value=1.0)


class SettingDocumentSerializer(serializers.Serializer):
    mu_deg = serializers.FloatField()
    nu_deg = serializers.FloatField()
    table = TableEntrySerializer(many=True)

    def validate_table(self, value):
        keys = {(e['source'], e['out1'], e['out2']) for e in value}
        if len(keys) != len(value):
            raise serializers.ValidationError('duplicate table entries')
        return value


class ModelDocumentSerializer(serializers.Serializer):
    sources = SourceSerializer(many=True)
    settings = SettingDocumentSerializer(many=True, allow_empty=False)

    def validate(self, attrs):
        labels = [s['label'] for s in attrs['sources']]
        if len(set(labels)) != len(labels):
            raise serializers.ValidationError('duplicate source labels')
        for setting in attrs['settings']:
            if len(setting['table']) != 4 * len(labels):
                raise serializers.ValidationError(
                    'setting (%s, %s) needs %d table entries' %
                    (setting['mu_deg'], setting['nu_deg'], 4 * len(labels)))
            unknown = {e['source'] for e in setting['table']} - set(labels)
            if unknown:
                raise serializers.ValidationError(
                    'unknown source labels: %s' % sorted(unknown))
        return attrs
