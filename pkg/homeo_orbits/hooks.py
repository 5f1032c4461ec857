from . import __version__ as app_version

app_name = "homeo_orbits"
app_title = "Homeo Orbits"
app_description = "Orbit structure of groups of circle and interval homeomorphisms"
app_license = "GNU GPL v3.0"

# Catalog
# -------
# catalog name -> builder taking ExampleParams and returning a GeneratorSystem

examples = {
	"case1-dense": "homeo_orbits.catalog.systems.case1_dense",
	"case2-single": "homeo_orbits.catalog.systems.case2_single",
	"cantor-ex1": "homeo_orbits.catalog.systems.cantor_ex1",
	"cantor-ex2": "homeo_orbits.catalog.systems.cantor_ex2",
	"level2-integer": "homeo_orbits.catalog.systems.level2_integer",
	"level2-dense": "homeo_orbits.catalog.systems.level2_dense",
	"level2-cantor": "homeo_orbits.catalog.systems.level2_cantor",
	"level-n": "homeo_orbits.catalog.systems.level_n",
	"parallel-pair": "homeo_orbits.catalog.systems.parallel_pair",
	"semigroup": "homeo_orbits.catalog.systems.semigroup",
	"circle-swap": "homeo_orbits.catalog.systems.circle_swap",
}

# Commands
# --------
# subcommand -> function taking the parsed argparse namespace and returning a JSON-able result

commands = {
	"example": "homeo_orbits.cli.commands.cmd_example",
	"orbit": "homeo_orbits.cli.commands.cmd_orbit",
	"classify": "homeo_orbits.cli.commands.cmd_classify",
	"level": "homeo_orbits.cli.commands.cmd_level",
	"fixed-points": "homeo_orbits.cli.commands.cmd_fixed_points",
	"witness": "homeo_orbits.cli.commands.cmd_witness",
	"transport": "homeo_orbits.cli.commands.cmd_transport",
	"plot": "homeo_orbits.cli.commands.cmd_plot",
}
