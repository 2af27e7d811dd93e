"""Click commands"""
