"""Smoke test for the fetpy bindings."""

import json

import fetpy


def main() -> None:
    fams = fetpy.families()
    assert "qminus" in fams and "sminus" in fams and "component_px" in fams

    assert fetpy.element_defined("hermite", 2, 0, 3)
    assert not fetpy.element_defined("hermite", 2, 0, 2)

    assert fetpy.space_dimension("hermite", 2, 0, 3) == 16
    assert fetpy.dof_counts("adini", 2, 1, 2) == [8, 4, 2]
    assert fetpy.is_unisolvent("sminus", 2, 1, 3)

    info = json.loads(fetpy.element_info("component_px", 3, 0, 2))
    assert info["space_dim"] == 20
    assert info["dofs_per_entity_dim"] == [8, 4, 4, 4]

    assert fetpy.transfer_then_equals_direct("qminus", 2, 0, 3)

    assert fetpy.betti_numbers("hermite", 2, [3, 3, 3], 2) == [1, 0, 0]
    assert fetpy.global_dofs("hermite", 2, 0, 3, 2) == 43

    lam = fetpy.korn_lambda_min(2)
    assert 0.0 < lam < 1.0

    print("fetpy smoke test passed")


if __name__ == "__main__":
    main()
