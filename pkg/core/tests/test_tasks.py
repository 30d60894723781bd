from django.test import SimpleTestCase

from core.constants import EXIT_DOMAIN
from core.tasks import DEMO_TASKS, kallin_row, slit_row, tangent_row


class DemoTaskTest(SimpleTestCase):
    def test_success_carries_a_json_row(self):
        outcome = slit_row(4, 64)
        self.assertEqual(outcome['status'], 'success')
        self.assertIs(outcome['row']['holds'], True)
        self.assertIsInstance(outcome['row']['mesh'], float)

    def test_domain_errors_become_status_dicts(self):
        outcome = tangent_row(9, count=8, m=32)
        self.assertEqual(outcome['status'], 'error')
        self.assertEqual(outcome['exit_status'], EXIT_DOMAIN)
        self.assertIn('1..8', outcome['message'])

    def test_eager_dispatch(self):
        result = kallin_row.delay(2, m=64, trials=5)
        outcome = result.get()
        self.assertEqual(outcome['status'], 'success')
        self.assertEqual(outcome['row']['k'], 2)

    def test_every_demo_has_a_task(self):
        self.assertEqual(set(DEMO_TASKS), {'slit', 'graph', 'kallin', 'tangent'})
