from rest_framework import serializers

from ..constants import Mode
from ..geometry.closing import ContainResult
from ..geometry.embed import CoverReport, InjectiveResult, ProjectionOp
from ..geometry.hull_lab import ConvergenceReport
from ..geometry.perturb import PerturbResult
from .fields import encode_value
from .forms import CertificateSerializer


class PerturbResultSerializer(serializers.BaseSerializer):
    def to_representation(self, instance: PerturbResult):
        mode = instance.curve.mode
        return {
            'curve': instance.curve.canonical(),
            'side': instance.side.value,
            'certificate': CertificateSerializer(instance.certificate).data,
            'bv_distance': instance.bv_distance,
            'bv_bound': encode_value(instance.bv_bound, mode),
            'sigma_integral': encode_value(instance.sigma_integral, mode),
            'plus_integral': encode_value(instance.plus_integral, mode),
            'minus_integral': encode_value(instance.minus_integral, mode),
            'input_digest': instance.input_digest,
            'details': encode_value(instance.details, mode),
        }


class CoverReportSerializer(serializers.BaseSerializer):
    def to_representation(self, instance: CoverReport):
        return {
            'm': instance.m,
            'length': instance.length,
            'diameters': list(instance.diameters),
            'deltas': instance.deltas.tolist(),
            'max_delta': instance.max_delta,
            'sum_sq': instance.sum_sq,
            'box_bound': instance.box_bound,
            'total_bound': instance.total_bound,
            'measure_bound': instance.measure_bound,
            'holds': instance.holds,
            'degenerate': instance.degenerate,
        }


class ProjectionSerializer(serializers.BaseSerializer):
    def to_representation(self, instance: ProjectionOp):
        return instance.canonical(self.context.get('mode', Mode.RATIONAL))


class InjectiveResultSerializer(serializers.BaseSerializer):
    def to_representation(self, instance: InjectiveResult):
        mode = instance.bvmap.curve.mode
        projections = ProjectionSerializer(instance.projections, many=True, context={'mode': mode})
        return {
            'map': instance.bvmap.canonical(),
            'projections': projections.data,
            'bv_distance': instance.bv_distance,
            'bv_distance_upper': encode_value(instance.bv_distance_upper, mode),
            'budget': encode_value(instance.budget, mode),
            'unchanged': instance.unchanged,
        }


class ContainResultSerializer(serializers.BaseSerializer):
    def to_representation(self, instance: ContainResult):
        return {
            'curve': instance.curve.canonical(),
            'certificate': CertificateSerializer(instance.certificate).data,
            'closed_curve': instance.closed_curve.canonical(),
            'ball': instance.ball.canonical(),
            'side': instance.perturbation.side.value,
            'bv_distance': instance.perturbation.bv_distance,
        }


class ConvergenceReportSerializer(serializers.BaseSerializer):
    def to_representation(self, instance: ConvergenceReport):
        return {
            'name': instance.name.value,
            'columns': list(instance.columns),
            'rows': [encode_value(row, Mode.F64) for row in instance.rows],
            'verdicts': dict(instance.verdicts),
            'parameters': encode_value(instance.parameters, Mode.F64),
            'holds': instance.holds,
        }
