"""量子態、算符與隨機系綜"""
