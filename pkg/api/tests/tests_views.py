import json
from collections import OrderedDict

from django.contrib.auth import get_user_model
from django.test import TestCase, Client
from django.urls import reverse

from rest_framework import status

from runs.models import ExperimentRun
from ..serializers import ExperimentRunDetailSerializer, \
                          ExperimentRunSerializer

User = get_user_model()

# initialize the APIClient app
client = Client()

SUMMARY = [{'check': 'no_signaling', 'value': '0.004', 'stderr': '0.002',
            'passed': 'true'}]


def create_run(subcommand, seed, exit_code=0):
    return ExperimentRun.objects.create(
        subcommand=subcommand, master_seed=seed,
        config_echo='master_seed: {}\n'.format(seed),
        summary=json.dumps(SUMMARY), exit_code=exit_code,
        output_dir='/tmp/lab/{}'.format(subcommand))


class GetRunsTest(TestCase):
    """ Test module for GET runs API """

    def setUp(self):
        User.objects.create_user(username='user1234', password='demo1234')
        for seed in range(4):
            create_run('epr', seed)
        create_run('density', 10)
        create_run('density', 11, exit_code=1)
        create_run('verify-theorem', 3)
        client.login(username='user1234', password='demo1234')

    def test_get_runs(self):
        # get API response
        response = client.get(reverse('get_runs'))
        # get data from db
        runs = ExperimentRun.objects.order_by('pk')[:5]
        serializer = ExperimentRunSerializer(runs, many=True)
        serializer_data = OrderedDict([
            (u"count", 7),
            (u"next", "http://testserver/api/runs/?limit=5&offset=5"),
            (u"previous", None),
            (u"results", serializer.data)
        ])
        self.assertEqual(response.data, serializer_data)
        self.assertEqual(response.status_code, status.HTTP_200_OK)

    def test_filter_runs(self):
        response = client.get(reverse('get_runs'), {'subcommand': 'density'})
        self.assertEqual(response.data['count'], 2)
        response = client.get(reverse('get_runs'), {'exit_code': 1})
        self.assertEqual(response.data['count'], 1)
        self.assertEqual(response.data['results'][0]['master_seed'], 11)
        response = client.get(reverse('get_runs'), {'master_seed': 3})
        self.assertEqual(
            [r['subcommand'] for r in response.data['results']],
            ['epr', 'verify-theorem'])

    def test_ordering(self):
        response = client.get(reverse('get_runs'),
                              {'ordering': '-master_seed'})
        self.assertEqual(response.data['results'][0]['master_seed'], 11)

    def test_unknown_subcommand(self):
        response = client.get(reverse('get_runs'), {'subcommand': 'teleport'})
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)


class GetRunTest(TestCase):
    """ Test module for GET run detail API """

    def setUp(self):
        User.objects.create_user(username='user1234', password='demo1234')
        self.run = create_run('swap', 42)

    def test_get_run(self):
        client.login(username='user1234', password='demo1234')
        response = client.get(reverse('get_run',
                                      kwargs={'oid': self.run.oid}))
        serializer = ExperimentRunDetailSerializer(self.run)
        self.assertEqual(response.data, serializer.data)
        self.assertEqual(response.data['summary'], SUMMARY)
        self.assertEqual(response.status_code, status.HTTP_200_OK)

    def test_get_missing_run(self):
        client.login(username='user1234', password='demo1234')
        response = client.get(reverse('get_run', kwargs={'oid': 'lab-er-x'}))
        self.assertEqual(response.status_code, status.HTTP_404_NOT_FOUND)

    def test_requires_login(self):
        client.logout()
        response = client.get(reverse('get_runs'))
        self.assertIn(response.status_code, (status.HTTP_401_UNAUTHORIZED,
                                             status.HTTP_403_FORBIDDEN))
