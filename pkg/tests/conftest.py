from hypothesis import settings

# exact arithmetic makes per-example time vary a lot; keep runs reproducible instead
settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")
