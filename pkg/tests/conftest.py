import hypothesis

hypothesis.settings.register_profile(
    "suite", deadline=None, max_examples=25, print_blob=True
)
hypothesis.settings.load_profile("suite")
