from core.geometry.certificates import certificate_search, integral_scale, is_zero_integral, search_integrals
from core.management.base import HullcertCommand
from core.serializers import CertificateSerializer, CurveSerializer
from core.serializers.fields import encode_value


class Command(HullcertCommand):
    help = 'Search the monomial one-forms z^a dz_j with |a| <= D for a certificate of a closed polyline'

    def add_command_arguments(self, parser):
        parser.add_argument('--curve', required=True, help='Curve JSON file')
        parser.add_argument('--max-degree', type=int, default=3, help='Degree bound D of the monomials')
        parser.add_argument('--list-integrals', action='store_true',
                            help='Also write the integral of every monomial form')

    def run(self, **options):
        curve = self.load_input('curve', options['curve'], CurveSerializer)
        found = certificate_search(curve, options['max_degree'])
        payload = {
            'max_degree': options['max_degree'],
            'certificate': CertificateSerializer(found).data if found else None,
        }
        if options['list_integrals']:
            payload['integrals'] = [
                {
                    'form': form.label(),
                    'integral': encode_value(value, curve.mode),
                    'zero': is_zero_integral(value, curve.ctx, integral_scale(curve, form)),
                }
                for form, value in search_integrals(curve, options['max_degree'])
            ]
        path = self.write_json(payload)
        self.report(f"{found.form.label() if found else 'no certificate'} -> {path}")
        return {'certificate': found.form.label() if found else None}
