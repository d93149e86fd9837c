# ruff: noqa: E402
"""
.. _configs-howto:

How to manage ``configs``
=========================

A ``config`` stores the numeration systems of a Halton sequence together
with the generation settings, so a sequence can be regenerated by name.

"""

# %%
# Show available ``configs``

import betahalton as bh

bh.show_available_configs()

bh.show_configs("fibonacci+base2")

# %%

print(f"These are stored at:\n"
      f"{bh.get_configs_path()}")

# %%
# We can create and save our own ``configs``. By default, these will be stored in
# the betahalton configs folder (otherwise, pass ``folder`` to choose where the
# ``.yaml`` file is written). Invalid configs are rejected before saving.

config_dict = {
    "systems": [
        {"coeffs": [2, 2]},
        {"coeffs": [3]},
    ],
    "count": 512,
    "precision": 17,
}

bh.save_config_dict(config_dict, "two_two+base3")

# %%
# A saved ``config`` is used by name, here or with ``betahalton gen --config``.

run_config = bh.get_run_config("two_two+base3")

point_set = bh.generate_point_set(run_config.halton, run_config.count)
print(point_set.provenance, point_set.points.shape)

# %%
# or load a ``config`` directly from ``.yaml``

config_dict = bh.load_config_dict(
    bh.get_configs_path() / "fibonacci.yaml"
)
print(config_dict)
