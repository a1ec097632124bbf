from hypothesis import settings

settings.register_profile("det", derandomize=True, deadline=None)
settings.load_profile("det")
