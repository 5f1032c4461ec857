from homeo_orbits.cli.constants import MODULE_NAME
from homeo_orbits.utils.log import create_log


def create_cli_log(**kwargs):
	return create_log(module_def=MODULE_NAME, **kwargs)
