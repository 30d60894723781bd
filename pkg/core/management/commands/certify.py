from core.geometry.certificates import certify
from core.management.base import HullcertCommand
from core.serializers import CertificateSerializer, CurveSerializer, OneFormSerializer


class Command(HullcertCommand):
    help = 'Integrate a holomorphic one-form over a simple closed polyline and report the certificate verdict'

    def add_command_arguments(self, parser):
        parser.add_argument('--curve', required=True, help='Curve JSON file')
        parser.add_argument('--form', required=True, help='One-form JSON file')

    def run(self, **options):
        curve = self.load_input('curve', options['curve'], CurveSerializer)
        form = self.load_input('form', options['form'], OneFormSerializer, mode=curve.mode)
        certificate = certify(curve, form)
        path = self.write_json({'certificate': CertificateSerializer(certificate).data})
        self.report(f'{certificate.verdict.value} -> {path}')
        return {'verdict': certificate.verdict.value}
