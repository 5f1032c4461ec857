from homeo_orbits.catalog.build import ExampleSpec, build_example, list_examples

__all__ = ["ExampleSpec", "build_example", "list_examples"]
