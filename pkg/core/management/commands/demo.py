import logging

import numpy as np
from celery import group

from core.constants import DemoName, Mode
from core.exceptions import DomainError, MalformedInputError, RetryExhaustedError
from core.geometry import hull_lab
from core.management.base import HullcertCommand
from core.serializers import ConvergenceReportSerializer
from core.tasks import DEMO_TASKS
from core.utils.artifacts import first_coordinate
from core.utils.digest import content_digest

logger = logging.getLogger(__name__)

ERRORS_BY_STATUS = {1: MalformedInputError, 2: DomainError, 3: RetryExhaustedError}

COLUMNS_HELP = '; '.join(f'{name.value}: {", ".join(columns)}' for name, columns in hull_lab.DEMO_COLUMNS.items())


class Command(HullcertCommand):
    help = f'Reproduce a convergence table and plot. CSV columns per demo - {COLUMNS_HELP}'

    def add_command_arguments(self, parser):
        parser.add_argument('name', choices=[d.value for d in DemoName])
        parser.add_argument('--k', type=int, nargs='+', default=[2, 4, 8, 16], help='Indices of the sequence')
        parser.add_argument('--n', type=int, default=self.settings['DEMO_N'], help='Polygon vertices')
        parser.add_argument('--m', type=int, default=self.settings['DEMO_M'], help='Samples per component')
        parser.add_argument('--degree', type=int, default=3, help='Polynomial degree bound')
        parser.add_argument('--trials', type=int, default=50, help='Random polynomials in the hull test')
        parser.add_argument('--count', type=int, default=8, help='Attached circles in the tangent demo')

    def task_arguments(self, name: DemoName, options) -> dict:
        if name == DemoName.SLIT:
            return {'n': options['n']}
        if name == DemoName.GRAPH:
            return {'n': options['n'], 'max_degree': options['degree']}
        if name == DemoName.KALLIN:
            return {'m': options['m'], 'degree': options['degree'], 'trials': options['trials'],
                    'seed': options['seed']}
        return {'count': options['count'], 'm': options['m']}

    def run(self, **options):
        name = DemoName(options['name'])
        ks = sorted(set(options['k']))
        kwargs = self.task_arguments(name, options)
        self.inputs['parameters'] = content_digest({'k': ks, **kwargs})
        task = DEMO_TASKS[name.value]
        outcomes = group(task.s(k, **kwargs) for k in ks).apply_async().join()
        failed = [outcome for outcome in outcomes if outcome['status'] != 'success']
        if failed:
            worst = max(failed, key=lambda outcome: outcome['exit_status'])
            raise ERRORS_BY_STATUS[worst['exit_status']](worst['message'])
        report = hull_lab.convergence_report(name, [outcome['row'] for outcome in outcomes],
                                             {'k': ks, **kwargs})
        stem = f'demo_{name.value}'
        csv_path = self.write_csv(report.columns, report.rows, stem)
        self.write_json(ConvergenceReportSerializer(report).data, stem)
        polylines, points = self.figure(name, ks, kwargs)
        self.write_svg(polylines, stem, points=points)
        style = self.style.SUCCESS if report.holds else self.style.WARNING
        self.stdout.write(style(f"demo {name.value}: {'holds' if report.holds else 'fails'} "
                                f'for k={ks} -> {csv_path}'))
        return {'holds': report.holds, 'verdicts': report.verdicts}

    def figure(self, name: DemoName, ks, kwargs):
        """Planar layers of the demo: first complex coordinate of every set in the table."""
        polylines, points = [], {}
        if name in (DemoName.SLIT, DemoName.GRAPH):
            circle = hull_lab.unit_circle_curve(kwargs['n'])
            polylines.append(('unit circle', first_coordinate(circle.points), True))
            for k in ks:
                curve, _ = hull_lab.slit_annulus_family(k, kwargs['n'], Mode.F64)
                label = f'gamma_{k}' if name == DemoName.SLIT else f'sigma_{k}'
                polylines.append((label, first_coordinate(curve.points), True))
        elif name == DemoName.KALLIN:
            data = hull_lab.kallin_example(ks[-1], kwargs['m'])
            points[f'hull of X_{ks[-1]}'] = first_coordinate(data.hull_k.samples)
            points['X'] = first_coordinate(data.x)
        else:
            circles = hull_lab.tangent_circles(kwargs['count'], kwargs['m'])
            polylines.append(('X', first_coordinate(circles.base), True))
            for j, (g, e) in enumerate(zip(circles.attached, circles.replacements), start=1):
                polylines.append((f'G_{j}', first_coordinate(g), True))
                if j in ks:
                    polylines.append((f'E_{j}', first_coordinate(np.asarray(e)), True))
        return polylines, points
