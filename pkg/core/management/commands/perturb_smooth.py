from core.geometry.perturb import perturb_smooth
from core.management.commands.perturb import Command as PerturbCommand


class Command(PerturbCommand):
    help = 'Push a densely sampled closed curve along a bump inside a ball until it is certified'
    perturbation = staticmethod(perturb_smooth)
