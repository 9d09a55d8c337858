import django_filters

from rest_framework import generics
from rest_framework.filters import OrderingFilter

from runs.models import ExperimentRun
from .serializers import ExperimentRunDetailSerializer, \
                         ExperimentRunSerializer


class RunFilter(django_filters.FilterSet):
    subcommand = django_filters.ChoiceFilter(
        field_name='subcommand', choices=ExperimentRun.SUBCOMMAND_CHOICES)
    exit_code = django_filters.NumberFilter(field_name='exit_code')
    master_seed = django_filters.NumberFilter(field_name='master_seed')
    created_after = django_filters.IsoDateTimeFilter(field_name='created',
                                                     lookup_expr='gte')

    class Meta:
        model = ExperimentRun
        fields = ('subcommand', 'exit_code', 'master_seed', 'created_after')


class RunListView(generics.ListAPIView):
    queryset = ExperimentRun.objects.order_by('pk')
    serializer_class = ExperimentRunSerializer
    filterset_class = RunFilter
    filter_backends = (OrderingFilter,
                       django_filters.rest_framework.DjangoFilterBackend,)
    ordering_fields = ('created', 'master_seed', 'subcommand', 'exit_code')


class RunDetailView(generics.RetrieveAPIView):
    queryset = ExperimentRun.objects.all()
    serializer_class = ExperimentRunDetailSerializer
    lookup_field = 'oid'
