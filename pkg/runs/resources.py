from import_export import resources

from .models import ExperimentRun


class ExperimentRunResource(resources.ModelResource):

    class Meta:
        model = ExperimentRun
        import_id_fields = ('oid',)
        fields = ('oid', 'subcommand', 'master_seed', 'exit_code',
                  'output_dir', 'created', 'config_echo', 'summary')
        export_order = fields
