import math

from core.constants import Mode
from core.exceptions import DimensionMismatchError
from core.geometry.curve_core import mesh
from core.geometry.metrics import hausdorff_points_sq, hausdorff_points_vectorized, hausdorff_polylines
from core.management.base import HullcertCommand
from core.serializers import CompactSampleSerializer, CurveSerializer
from core.serializers.fields import encode_value


class Command(HullcertCommand):
    help = 'Hausdorff distance of two finite samples or of two polyline images'

    def add_command_arguments(self, parser):
        parser.add_argument('--a', required=True, help='First sample or curve JSON file')
        parser.add_argument('--b', required=True, help='Second sample or curve JSON file')
        parser.add_argument('--kind', choices=['points', 'polylines'], default='points')
        parser.add_argument('--method', choices=['grid', 'brute', 'vectorized'], default='grid',
                            help='Nearest-point search for finite samples')
        parser.add_argument('--step', type=float,
                            help='Sampling step h for polylines (default: a quarter of the finer mesh)')

    def run(self, **options):
        if options['kind'] == 'polylines':
            return self.polylines(**options)
        a = self.load_input('a', options['a'], CompactSampleSerializer)
        b = self.load_input('b', options['b'], CompactSampleSerializer)
        if a.dim != b.dim:
            raise DimensionMismatchError(f'Samples live in different dimensions: {a.dim} vs {b.dim}')
        payload = {'kind': 'points', 'method': options['method']}
        if options['method'] == 'vectorized':
            payload['distance'] = hausdorff_points_vectorized(a, b)
        else:
            distance_sq = hausdorff_points_sq(a, b, options['method'])
            payload['distance_sq'] = encode_value(distance_sq, a.mode if a.mode == b.mode else Mode.F64)
            payload['distance'] = math.sqrt(distance_sq)
        path = self.write_json(payload)
        self.report(f"{payload['distance']:.12g} -> {path}")
        return {'distance': payload['distance']}

    def polylines(self, **options):
        gamma = self.load_input('a', options['a'], CurveSerializer)
        sigma = self.load_input('b', options['b'], CurveSerializer)
        step = options['step'] or min(mesh(gamma), mesh(sigma)) / 4
        distance = hausdorff_polylines(gamma, sigma, step)
        path = self.write_json({'kind': 'polylines', 'step': step, 'distance': distance,
                                'error_bound': step / 2})
        self.report(f'{distance:.12g} (within {step / 2:.3g}) -> {path}')
        return {'distance': distance}
