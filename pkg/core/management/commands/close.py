from core.geometry.closing import close_arc
from core.management.base import HullcertCommand
from core.serializers import CurveSerializer, TubeSerializer
from core.utils.artifacts import first_coordinate


class Command(HullcertCommand):
    help = 'Close a simple arc in C^n into a simple closed polyline inside a tube around a core polyline'

    def add_command_arguments(self, parser):
        parser.add_argument('--arc', required=True, help='Open curve JSON file')
        parser.add_argument('--tube', required=True, help='Tube JSON file: {"core": <curve>, "radius": ...}')
        parser.add_argument('--svg', action='store_true', help='Also plot the arc and the closed curve')

    def run(self, **options):
        arc = self.load_input('arc', options['arc'], CurveSerializer)
        tube = self.load_input('tube', options['tube'], TubeSerializer, mode=arc.mode)
        closed = close_arc(arc, tube, options['seed'], self.settings['RETRY_LIMIT'],
                           self.settings['DENOMINATOR_LIMIT'])
        path = self.write_json({'curve': closed.canonical(), 'vertices': closed.m})
        if options['svg']:
            self.write_svg([
                ('tube core', first_coordinate(tube.core.points), False),
                ('closed', first_coordinate(closed.points), True),
                ('arc', first_coordinate(arc.points), False),
            ])
        self.report(f'closed with {closed.m} vertices -> {path}')
        return {'vertices': closed.m}
