from hypothesis import settings

settings.register_profile("pairflux", deadline=None, max_examples=200)
settings.load_profile("pairflux")
