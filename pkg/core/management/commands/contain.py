from core.geometry.closing import contain_in_pc_curve
from core.management.base import HullcertCommand, parse_scalar
from core.serializers import ContainResultSerializer, CurveSerializer, TubeSerializer
from core.utils.artifacts import first_coordinate


class Command(HullcertCommand):
    help = 'Contain a simple arc in a certified polynomially convex simple closed curve inside a tube'

    def add_command_arguments(self, parser):
        parser.add_argument('--arc', required=True, help='Open curve JSON file')
        parser.add_argument('--tube', required=True, help='Tube JSON file')
        parser.add_argument('--eps', required=True, type=parse_scalar, help='bv budget of the perturbation step')
        parser.add_argument('--svg', action='store_true', help='Also plot the arc and the certified curve')

    def run(self, **options):
        arc = self.load_input('arc', options['arc'], CurveSerializer)
        tube = self.load_input('tube', options['tube'], TubeSerializer, mode=arc.mode)
        config = self.settings
        result = contain_in_pc_curve(
            arc, tube, arc.ctx.coerce(options['eps']), options['seed'],
            retry_limit=config['RETRY_LIMIT'],
            shrink_limit=config['SHRINK_LIMIT'],
            denominator_limit=config['DENOMINATOR_LIMIT'],
        )
        path = self.write_json(ContainResultSerializer(result).data)
        if options['svg']:
            self.write_svg([
                ('certified', first_coordinate(result.curve.points), True),
                ('arc', first_coordinate(arc.points), False),
            ])
        self.report(f'{result.certificate.verdict.value} -> {path}')
        return {'verdict': result.certificate.verdict.value}
