import os

from hypothesis import HealthCheck, Verbosity, settings

# Профили hypothesis; HYPOTHESIS_PROFILE=ci отключает дедлайны на медленных машинах
settings.register_profile('ci', deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile('dev', max_examples=20, deadline=None)
settings.register_profile('debug', max_examples=10, deadline=None, verbosity=Verbosity.verbose)
settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'ci'))
