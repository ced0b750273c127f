"""Command dispatcher for the chainscope subcommands."""
import traceback
from argparse import Namespace

from .container import DIContainer
from .commands.base_command import status


class CommandDispatcher:
    """Routes a parsed subcommand to its handler and returns the exit code."""

    COMMANDS = {'analyze', 'scan', 'shadow', 'odometer', 'export'}

    def __init__(self, default_threads: int = 1):
        self._container = DIContainer(default_threads)

    @property
    def container(self) -> DIContainer:
        return self._container

    def can_handle(self, command: str) -> bool:
        return command in self.COMMANDS

    def dispatch(self, command: str, args: Namespace) -> int:
        """
        Dispatch a command to its handler.

        Returns:
            The exit code of the command
        """
        if not self.can_handle(command):
            status(f"❌ Unknown command: {command}")
            return 1

        command_map = {
            'analyze': self._container.analyze_command,
            'scan': self._container.scan_command,
            'shadow': self._container.shadow_command,
            'odometer': self._container.odometer_command,
            'export': self._container.export_command,
        }
        return command_map[command].execute(args)

    @classmethod
    def try_dispatch(cls, command: str, args: Namespace, default_threads: int = 1) -> int:
        """
        Create a dispatcher and run one command.

        Unexpected exceptions are internal errors and exit with 1.
        """
        try:
            return cls(default_threads).dispatch(command, args)
        except Exception as e:
            status(f"❌ Internal error: {e}")
            if getattr(args, 'verbose', False):
                status(traceback.format_exc())
            return 1
