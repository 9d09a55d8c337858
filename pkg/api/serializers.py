import json

from rest_framework import serializers

from runs.models import ExperimentRun


class ExperimentRunSerializer(serializers.ModelSerializer):

    class Meta:
        model = ExperimentRun
        fields = ('oid', 'subcommand', 'master_seed', 'exit_code',
                  'output_dir', 'created')


class ExperimentRunDetailSerializer(ExperimentRunSerializer):
    summary = serializers.SerializerMethodField('_summary')

    def _summary(self, obj):
        return json.loads(obj.summary) if obj.summary else []

    class Meta(ExperimentRunSerializer.Meta):
        fields = ExperimentRunSerializer.Meta.fields + ('config_echo',
                                                        'summary')
