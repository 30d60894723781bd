from rest_framework import serializers

from ..constants import Mode
from ..geometry.certificates import Certificate
from ..geometry.polynomials import CPolynomial, OneForm
from ..geometry.scalar import context_for
from .fields import ComplexField, encode_value


class TermSerializer(serializers.Serializer):
    exponent = serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=1)
    coefficient = ComplexField()


class CPolynomialSerializer(serializers.Serializer):
    nvars = serializers.IntegerField(min_value=1)
    terms = TermSerializer(many=True)

    def validate(self, attrs):
        for index, term in enumerate(attrs['terms']):
            if len(term['exponent']) != attrs['nvars']:
                raise serializers.ValidationError({
                    'terms': f"Term {index} has {len(term['exponent'])} exponents, expected {attrs['nvars']}"
                })
        return attrs

    def create(self, validated_data) -> CPolynomial:
        ctx = context_for(self.context.get('mode', Mode.RATIONAL))
        terms = [(term['exponent'], tuple(term['coefficient'])) for term in validated_data['terms']]
        return CPolynomial.from_terms(validated_data['nvars'], terms, ctx)

    def to_representation(self, instance: CPolynomial):
        return instance.canonical(self.context.get('mode', Mode.RATIONAL))


class OneFormSerializer(serializers.Serializer):
    nvars = serializers.IntegerField(min_value=1)
    components = CPolynomialSerializer(many=True)

    def validate(self, attrs):
        if len(attrs['components']) != attrs['nvars']:
            raise serializers.ValidationError({
                'components': f"{len(attrs['components'])} components for a form on C^{attrs['nvars']}"
            })
        if any(component['nvars'] != attrs['nvars'] for component in attrs['components']):
            raise serializers.ValidationError({'components': 'Every component must use nvars variables'})
        return attrs

    def create(self, validated_data) -> OneForm:
        builder = CPolynomialSerializer(context=self.context)
        return OneForm(tuple(builder.create(component) for component in validated_data['components']))

    def to_representation(self, instance: OneForm):
        return instance.canonical(self.context.get('mode', Mode.RATIONAL))


class CertificateSerializer(serializers.BaseSerializer):
    def to_representation(self, instance: Certificate):
        value = complex(instance.integral)
        return {
            'form': instance.form.canonical(instance.mode),
            'form_label': instance.form.label(),
            'integral': encode_value(instance.integral, instance.mode),
            'integral_float': [value.real, value.imag],
            'verdict': instance.verdict.value,
            'curve_digest': instance.curve_digest,
            'mode': instance.mode.value,
        }
