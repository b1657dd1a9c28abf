import sys

import click

from os_dulac.pipeline import EXIT_INPUT
from os_dulac.utils import walk_modules

from . import __version__


class CommandFinder(click.Group):
    """Subcommands are the ``cli`` commands of the modules in ``command_packages``."""

    def list_commands(self, ctx):
        ctx.ensure_object(dict)
        return sorted(self.__find_commands(**ctx.obj).keys())

    def get_command(self, ctx, name):
        ctx.ensure_object(dict)
        commands = self.__find_commands(**ctx.obj)
        return commands.get(name, None)

    def __find_commands(self, **kwargs):
        command_packages = kwargs.get("command_packages", [])
        commands = {}
        for command_package in command_packages:
            for cmd_module in walk_modules(command_package, skip_fail=False):
                if hasattr(cmd_module, "cli") and isinstance(
                    cmd_module.cli, click.Command
                ):
                    name = cmd_module.__name__.split(".")[-1].replace("_", "-")
                    commands[name] = cmd_module.cli

        return commands

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        if not standalone_mode:
            return super().main(args, prog_name, complete_var, False, **extra)
        try:
            rv = super().main(args, prog_name, complete_var, False, **extra)
        except click.UsageError as e:
            e.show()
            sys.exit(EXIT_INPUT)
        except click.ClickException as e:
            e.show()
            sys.exit(e.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(1)
        sys.exit(rv if isinstance(rv, int) else 0)


def command_group(**kwargs):
    @click.command(cls=CommandFinder, context_settings=dict(obj=kwargs))
    @click.version_option(version=__version__)
    @click.pass_context
    def cli(ctx):
        """Dulac functions, Bernstein certificates and Darboux integrals for planar polynomial systems."""

    return cli


def execute(**kwargs):
    command_group(**kwargs)()
