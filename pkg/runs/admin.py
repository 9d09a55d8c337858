from django.contrib import admin

from import_export.admin import ImportExportModelAdmin

from .models import ExperimentRun
from .resources import ExperimentRunResource


@admin.register(ExperimentRun)
class ExperimentRunAdmin(ImportExportModelAdmin):
    resource_classes = [ExperimentRunResource]
    list_display = ('oid', 'subcommand', 'master_seed', 'exit_code',
                    'created')
    list_filter = ('subcommand', 'exit_code')
    search_fields = ('oid', 'output_dir')
