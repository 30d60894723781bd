from rest_framework import serializers

from ..constants import Domain, Mode
from ..geometry.closing import Tube
from ..geometry.curve_core import PolyCurve
from ..geometry.embed import BVMap
from ..geometry.metrics import CompactSample
from ..geometry.perturb import Ball
from ..geometry.scalar import context_for
from .fields import MODE_CHOICES, PointField, ScalarField, resolve_mode


class CurveSerializer(serializers.Serializer):
    dim = serializers.IntegerField(min_value=1)
    closed = serializers.BooleanField(default=True)
    mode = serializers.ChoiceField(choices=MODE_CHOICES, required=False)
    space = serializers.ChoiceField(choices=['complex', 'real'], default='complex')
    degenerate = serializers.BooleanField(default=False)
    params = serializers.ListField(child=ScalarField(), required=False)
    points = serializers.ListField(child=PointField(), min_length=2)

    def validate(self, attrs):
        width = attrs['dim'] if attrs['space'] == 'real' else 2 * attrs['dim']
        for index, point in enumerate(attrs['points']):
            if len(point) != width:
                raise serializers.ValidationError({
                    'points': f'Point {index} has {len(point)} coordinates, expected {width}'
                })
        if 'params' in attrs and len(attrs['params']) != len(attrs['points']):
            raise serializers.ValidationError({
                'params': f"{len(attrs['params'])} params for {len(attrs['points'])} points"
            })
        attrs['mode'] = resolve_mode(attrs, self.context)
        return attrs

    def create(self, validated_data) -> PolyCurve:
        real = validated_data['space'] == 'real'
        return PolyCurve.build(
            validated_data['points'],
            validated_data.get('params'),
            closed=validated_data['closed'],
            mode=validated_data['mode'],
            degenerate=validated_data['degenerate'] or real,
            real_space=real,
            tol=self.context.get('tolerance', context_for(validated_data['mode']).tol),
        )

    def to_representation(self, instance: PolyCurve):
        return instance.canonical()


class BVMapSerializer(CurveSerializer):
    domain = serializers.ChoiceField(choices=[d.value for d in Domain], required=False)
    space = serializers.ChoiceField(choices=['real'], default='real')

    def create(self, validated_data) -> BVMap:
        domain = validated_data.get('domain')
        if domain is None:
            domain = Domain.CIRCLE if validated_data['closed'] else Domain.INTERVAL
        extra = {'tol': self.context['tolerance']} if 'tolerance' in self.context else {}
        return BVMap.build(validated_data['points'], validated_data.get('params'), domain,
                           validated_data['mode'], **extra)

    def to_representation(self, instance: BVMap):
        return instance.canonical()


class CompactSampleSerializer(serializers.Serializer):
    dim = serializers.IntegerField(min_value=1)
    mode = serializers.ChoiceField(choices=MODE_CHOICES, required=False)
    points = serializers.ListField(child=PointField(), min_length=1)

    def validate(self, attrs):
        for index, point in enumerate(attrs['points']):
            if len(point) != attrs['dim']:
                raise serializers.ValidationError({
                    'points': f"Point {index} has {len(point)} coordinates, expected {attrs['dim']}"
                })
        attrs['mode'] = resolve_mode(attrs, self.context)
        return attrs

    def create(self, validated_data) -> CompactSample:
        return CompactSample.build(validated_data['points'], validated_data['mode'], validated_data['dim'])

    def to_representation(self, instance: CompactSample):
        return instance.canonical()


class BallSerializer(serializers.Serializer):
    center = PointField()
    radius = ScalarField()
    mode = serializers.ChoiceField(choices=MODE_CHOICES, required=False)

    def validate(self, attrs):
        attrs['mode'] = resolve_mode(attrs, self.context)
        return attrs

    def create(self, validated_data) -> Ball:
        ctx = context_for(validated_data['mode'])
        return Ball(
            tuple(ctx.coerce(c) for c in validated_data['center']),
            ctx.coerce(validated_data['radius']),
            Mode(validated_data['mode']),
        )

    def to_representation(self, instance: Ball):
        return instance.canonical()


class TubeSerializer(serializers.Serializer):
    core = CurveSerializer()
    radius = ScalarField()

    def create(self, validated_data) -> Tube:
        core = CurveSerializer(context=self.context).create(validated_data['core'])
        return Tube(core, core.ctx.coerce(validated_data['radius']))

    def to_representation(self, instance: Tube):
        return instance.canonical()
