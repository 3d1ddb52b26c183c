from django.test import SimpleTestCase as DjangoSimpleTestCase
from rest_framework.test import APIClient


class HealthCheckTests(DjangoSimpleTestCase):

    def test_health(self):
        response = self.client.get('/health/')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json(), {'status': 'healthy'})


class ScenarioAPITests(DjangoSimpleTestCase):

    def setUp(self):
        self.api = APIClient()

    def test_list(self):
        response = self.api.get('/api/scenarios/')
        self.assertEqual(response.status_code, 200)
        ids = [entry['id'] for entry in response.json()]
        self.assertIn('hopf-3d', ids)
        self.assertIn('line-bundle', ids)

    def test_detail(self):
        response = self.api.get('/api/scenarios/trivial-default/', {'cap': 3})
        self.assertEqual(response.status_code, 200)
        data = response.json()
        self.assertTrue(data['passed'])
        self.assertEqual(data['exit_code'], 0)
        curvature = next(q for q in data['quantities'] if q['name'] == 'curvature')
        self.assertEqual(curvature, {'name': 'curvature', 'value': '0', 'target': '0', 'matched': True})

    def test_lambda_query_parameter(self):
        response = self.api.get('/api/scenarios/line-bundle/', {'cap': 3, 'lambda': '2', 'omega_sq': 'nonzero'})
        self.assertEqual(response.status_code, 200)
        data = response.json()
        self.assertFalse(data['passed'])
        self.assertIn('multiplicative', data['mismatches'])

    def test_unknown_scenario(self):
        response = self.api.get('/api/scenarios/hopf-5d/')
        self.assertEqual(response.status_code, 404)

    def test_invalid_cap(self):
        response = self.api.get('/api/scenarios/hopf-3d/', {'cap': 1})
        self.assertEqual(response.status_code, 400)
        self.assertIn('cap', response.json())

    def test_invalid_scalar(self):
        response = self.api.get('/api/scenarios/hopf-4dplus/', {'t': '1/('})
        self.assertEqual(response.status_code, 400)
        self.assertIn('t', response.json())


class SuiteAPITests(DjangoSimpleTestCase):

    def setUp(self):
        self.api = APIClient()

    def test_axioms_suite(self):
        response = self.api.get('/api/suites/axioms/', {'group': 'u1', 'cap': 3})
        self.assertEqual(response.status_code, 200)
        data = response.json()
        self.assertTrue(data['passed'])
        self.assertNotIn('checks', data)

    def test_unknown_group_is_rejected(self):
        response = self.api.get('/api/suites/axioms/', {'group': 'so3'})
        self.assertEqual(response.status_code, 400)
        self.assertIn('error', response.json())

    def test_unknown_suite(self):
        response = self.api.get('/api/suites/bogus/')
        self.assertEqual(response.status_code, 404)
