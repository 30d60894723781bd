from core.exceptions import MalformedInputError
from core.geometry.embed import make_injective, secant_cover_bound
from core.management.base import HullcertCommand, parse_scalar
from core.serializers import BVMapSerializer, CoverReportSerializer, InjectiveResultSerializer


class Command(HullcertCommand):
    help = 'Replace a BV map in R^k (k >= 3) by an injective one within eps in the bv norm'

    def add_command_arguments(self, parser):
        parser.add_argument('--map', required=True, dest='bvmap', help='BV map JSON file')
        parser.add_argument('--eps', type=parse_scalar, help='bv budget, decimal or p/q')
        parser.add_argument('--cover', type=int, metavar='M',
                            help='Also report the secant box cover bound for M equal-length pieces')

    def run(self, **options):
        bvmap = self.load_input('map', options['bvmap'], BVMapSerializer)
        if options['eps'] is None and options['cover'] is None:
            raise MalformedInputError('embed needs --eps, --cover or both')
        payload, summary = {}, {}
        if options['cover'] is not None:
            report = secant_cover_bound(bvmap, options['cover'])
            payload['cover'] = CoverReportSerializer(report).data
            summary['cover_holds'] = report.holds
        if options['eps'] is not None:
            result = make_injective(bvmap, bvmap.ctx.coerce(options['eps']), options['seed'],
                                    self.settings['RETRY_LIMIT'], self.settings['DENOMINATOR_LIMIT'])
            payload['injective'] = InjectiveResultSerializer(result).data
            summary['unchanged'] = result.unchanged
            summary['bv_distance'] = result.bv_distance
        path = self.write_json(payload)
        self.report(f'{summary} -> {path}')
        return summary
