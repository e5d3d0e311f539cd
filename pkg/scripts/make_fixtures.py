"""Write the example machines to data/ as KISS2/XKISS files."""
from pathlib import Path

from igmm.kiss import write_kiss2, write_xkiss
from igmm.samples import (controller, controller_min, pairwise_gadget, seven_state,
                          seven_state_min, seven_state_reduced)

FIXTURES = {
    "fig1.kiss": (controller, write_kiss2),
    "fig1_min.kiss": (controller_min, write_kiss2),
    "fig2.xkiss": (seven_state, write_xkiss),
    "fig2_min.xkiss": (seven_state_min, write_xkiss),
    "fig2_reduced.xkiss": (seven_state_reduced, write_xkiss),
    "gadget.xkiss": (pairwise_gadget, write_xkiss),
}


def main(out=Path(__file__).resolve().parent.parent / "data"):
    out.mkdir(exist_ok=True)
    for name, (make, write) in FIXTURES.items():
        (out / name).write_text(write(make()))
        print(out / name)


if __name__ == "__main__":
    main()
