import sys
from typing import Any, Dict, List, Optional

from fieldmaps._errors import FieldMapError, UnknownCommand

COMMANDS = {
    'norm': ('fieldmaps._command._main_norm', 'main_norm'),
    'mapnorm': ('fieldmaps._command._main_norm', 'main_mapnorm'),
    'steiner': ('fieldmaps._command._main_norm', 'main_steiner'),
    'compose': ('fieldmaps._command._main_calculus', 'main_compose'),
    'diff': ('fieldmaps._command._main_calculus', 'main_diff'),
    'product': ('fieldmaps._command._main_calculus', 'main_product'),
    'young': ('fieldmaps._command._main_calculus', 'main_young'),
    'solve': ('fieldmaps._command._main_solve', 'main_solve'),
    'linear': ('fieldmaps._command._main_solve', 'main_linear'),
    'compare': ('fieldmaps._command._main_solve', 'main_compare'),
    'background': ('fieldmaps._command._main_solve', 'main_background'),
    'uniq': ('fieldmaps._command._main_solve', 'main_uniq'),
    'verify-all': ('fieldmaps._command._main_verify_all', 'main_verify_all'),
}


def _error_envelope(command: str, ex: Exception) -> Dict[str, Any]:
    if isinstance(ex, FieldMapError):
        error = ex.to_json()
    elif isinstance(ex, OSError):
        error = {'code': 'FileError', 'message': str(ex), 'detail': {}}
    else:
        error = {'code': 'InvalidArgument', 'message': str(ex), 'detail': {}}
    return {'command': command, 'error': error}


def main(*, command_line_args: Optional[List[str]] = None) -> int:
    """Runs a fieldmaps command.

    Returns:
        0 when every bound held, 1 when a bound was violated, 2 when the
        input was rejected or a computation failed.
    """
    if command_line_args is None:
        command_line_args = sys.argv[1:]

    mode = command_line_args[0] if command_line_args else None
    if mode in COMMANDS:
        import importlib

        from fieldmaps._command._common import write_report

        module_name, func_name = COMMANDS[mode]
        func = getattr(importlib.import_module(module_name), func_name)
        try:
            return func(command_line_args=command_line_args[1:])
        except (ValueError, OSError) as ex:
            envelope = _error_envelope(mode, ex)
            print(f"\033[31m{envelope['error']['code']}: {ex}\033[0m", file=sys.stderr)
            write_report(envelope, None)
            return 2

    want_help = mode in ['help', 'h', '--help', '-help', '-h', '--h']
    if not want_help:
        if command_line_args and not command_line_args[0].startswith('-'):
            print(f"\033[31m{UnknownCommand.code}: unrecognized command fieldmaps {command_line_args[0]}\033[0m\n",
                  file=sys.stderr)
        else:
            print(f"\033[31mDidn't specify a command.\033[0m\n", file=sys.stderr)
    print("Available commands are:\n" + "".join(f"    fieldmaps {name}\n" for name in COMMANDS),
          file=sys.stderr, end='')
    if not want_help:
        sys.exit(1)
    return 0


if __name__ == '__main__':
    sys.exit(main())
