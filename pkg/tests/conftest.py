from fractions import Fraction

from hypothesis import HealthCheck, settings

from wzkit.exact import QQ, Poly

settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("exact")


def qpoly(*cs, var="x"):
    return Poly([Fraction(c) for c in cs], QQ, var)
