"""CLI 指令模組，每個檔案一個 typer 指令"""
