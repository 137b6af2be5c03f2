from hypothesis import HealthCheck, settings

settings.register_profile(
    "bfree",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
)
settings.load_profile("bfree")
