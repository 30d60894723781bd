from core.geometry.perturb import perturb_rectifiable
from core.management.base import HullcertCommand, parse_scalar
from core.serializers import BallSerializer, CurveSerializer, PerturbResultSerializer
from core.utils.artifacts import first_coordinate


class Command(HullcertCommand):
    help = 'Perturb a rectifiable simple closed curve inside a ball into a certified polynomially convex one'
    perturbation = staticmethod(perturb_rectifiable)

    def add_command_arguments(self, parser):
        parser.add_argument('--curve', required=True, help='Curve JSON file')
        parser.add_argument('--ball', required=True, help='Ball JSON file')
        parser.add_argument('--eps', required=True, type=parse_scalar, help='bv budget, decimal or p/q')
        parser.add_argument('--svg', action='store_true', help='Also plot both curves in the first coordinate')

    def run(self, **options):
        curve = self.load_input('curve', options['curve'], CurveSerializer)
        ball = self.load_input('ball', options['ball'], BallSerializer, mode=curve.mode)
        eps = curve.ctx.coerce(options['eps'])
        config = self.settings
        result = self.perturbation(
            curve, eps, ball, options['seed'],
            retry_limit=config['RETRY_LIMIT'],
            shrink_limit=config['SHRINK_LIMIT'],
            denominator_limit=config['DENOMINATOR_LIMIT'],
        )
        path = self.write_json(PerturbResultSerializer(result).data)
        if options['svg']:
            self.write_svg([
                ('input', first_coordinate(curve.points), True),
                ('perturbed', first_coordinate(result.curve.points), True),
            ])
        self.report(f'{result.certificate.verdict.value} ({result.side.value} side) -> {path}')
        return {'verdict': result.certificate.verdict.value, 'side': result.side.value}
