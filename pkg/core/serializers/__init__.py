from core.serializers.curve import (
    BallSerializer,
    BVMapSerializer,
    CompactSampleSerializer,
    CurveSerializer,
    TubeSerializer,
)
from core.serializers.forms import CertificateSerializer, CPolynomialSerializer, OneFormSerializer
from core.serializers.results import (
    ContainResultSerializer,
    ConvergenceReportSerializer,
    CoverReportSerializer,
    InjectiveResultSerializer,
    PerturbResultSerializer,
    ProjectionSerializer,
)

__all__ = (
    'BallSerializer', 'BVMapSerializer', 'CompactSampleSerializer', 'CurveSerializer', 'TubeSerializer',
    'CertificateSerializer', 'CPolynomialSerializer', 'OneFormSerializer',
    'ContainResultSerializer', 'ConvergenceReportSerializer', 'CoverReportSerializer',
    'InjectiveResultSerializer', 'PerturbResultSerializer', 'ProjectionSerializer',
)
