import platform

import numpy as np

from core.errors import UncertaintyKitError
from handlers.errors import fail
from utils import __version__
from utils.formatter import generate_header
from utils.settings import satisfied_tolerance
from theme.cyberpunk import console


def version():
    """顯示版本、數值後端與目前使用的容差"""
    try:
        tol = satisfied_tolerance()
    except UncertaintyKitError as e:
        fail(e)

    console.print(f"[title]{generate_header('ur-kit', 'small')}[/title]")
    console.print(f"[success]>>> UNCERTAINTY KIT v{__version__}[/success]")
    console.print("[success]>>> 以變異數為基礎的統一不確定關係數值工具[/success]")
    console.print(
        f">>> Python {platform.python_version()} / numpy {np.__version__}"
        f" / satisfied 容差 [value]{tol:g}[/value]"
    )
