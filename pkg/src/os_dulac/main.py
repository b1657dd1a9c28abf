from os_dulac.cmdline import execute


def main():
    command_packages = ["os_dulac.commands"]
    execute(command_packages=command_packages)
