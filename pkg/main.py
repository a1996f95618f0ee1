import sys

from cli.app import run


def main():
    # 有理数运算可能产生很长的整数
    if hasattr(sys, 'set_int_max_str_digits'):
        sys.set_int_max_str_digits(0)

    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
